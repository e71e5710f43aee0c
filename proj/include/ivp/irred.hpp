#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ivp/factored.hpp"
#include "ivp/fixdiv.hpp"

namespace ivp {

enum class IrredVerdict { Irreducible, Reducible, NotMember, Inconclusive };

inline const char* to_string(IrredVerdict v) {
  switch (v) {
    case IrredVerdict::Irreducible: return "Irreducible";
    case IrredVerdict::Reducible: return "Reducible";
    case IrredVerdict::NotMember: return "NotMember";
    case IrredVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Outcome of the Int(Z) irreducibility check with the conditions it looked at.
struct IntZIrredReport {
  FactoredIVP subject;
  IrredVerdict verdict = IrredVerdict::Inconclusive;
  bool sign_is_unit = true;
  bool denom_equals_fixdiv = false;
  Integer numerator_fixdiv = 0;
  std::size_t splits_examined = 0;
  /// Two members of Int(Z) whose product is the subject.
  std::optional<std::pair<FactoredIVP, FactoredIVP>> split;
  /// Set when the denominator is a proper divisor of the fixed divisor: the
  /// subject is this integer times numerator/fixdiv.
  std::optional<Integer> constant_split;
  std::string reason;
};

struct IrredOptions {
  unsigned max_slots = 16;
  unsigned max_depth = kDefaultMaxDepth;
};

inline std::vector<unsigned> prime_list(const Integer& n) {
  std::vector<unsigned> ps;
  if (n == 1) return ps;
  for (const auto& [p, e] : small_factorization(n)) ps.push_back(p);
  return ps;
}

/// First (smallest index) proper nonempty sub-multiset whose fixed divisor
/// and that of its complement multiply to the fixed divisor of `block`.
/// Symmetric halves are visited once.
inline std::optional<std::size_t> find_fixdiv_split(SubproductValuations& eng, std::size_t block,
                                                    std::size_t* examined = nullptr) {
  const auto c = eng.counts(block);
  const auto target = eng.valuations(block);
  // Enumerate sub-count vectors of c in increasing index order.
  std::vector<unsigned> sub(c.size(), 0);
  while (true) {
    std::size_t k = 0;
    while (k < sub.size() && sub[k] == c[k]) sub[k++] = 0;
    if (k == sub.size()) break;
    ++sub[k];
    const std::size_t s = eng.index(sub);
    const std::size_t comp = block - s;
    if (comp == 0) break;  // sub == c
    if (s > comp) continue;
    if (examined) ++*examined;
    const auto& v1 = eng.valuations(s);
    const auto& v2 = eng.valuations(comp);
    bool equal = true;
    for (std::size_t i = 0; i < target.size() && equal; ++i) equal = v1[i] + v2[i] == target[i];
    if (equal) return s;
  }
  return std::nullopt;
}

/// Irreducibility in Int(Z) of a canonical element whose factors are
/// irreducible over Q: the sign must be a unit, the denominator must equal
/// the fixed divisor of the numerator, and no splitting of the factor
/// multiset into two parts may have fixed divisors multiplying to it.
inline IntZIrredReport is_irreducible_intz(const FactoredIVP& f, const IrredOptions& opt = {}) {
  IntZIrredReport rep;
  rep.subject = f;
  rep.numerator_fixdiv = fixed_divisor(f);
  if (rep.numerator_fixdiv % f.denom() != 0) {
    rep.verdict = IrredVerdict::NotMember;
    rep.reason = "not a member (fixdiv = " + rep.numerator_fixdiv.str() + ")";
    return rep;
  }
  rep.denom_equals_fixdiv = rep.numerator_fixdiv == f.denom();
  if (!rep.denom_equals_fixdiv) {
    rep.verdict = IrredVerdict::Reducible;
    rep.constant_split = rep.numerator_fixdiv / f.denom();
    rep.reason = "denominator " + f.denom().str() + " is a proper divisor of fixdiv " + rep.numerator_fixdiv.str();
    return rep;
  }
  if (f.slots() > opt.max_slots) {
    rep.verdict = IrredVerdict::Inconclusive;
    rep.reason = "factor multiset exceeds the slot cap of " + std::to_string(opt.max_slots);
    return rep;
  }
  SubproductValuations eng(f.polys(), f.multiplicities(), prime_list(f.denom()), opt.max_depth);
  const std::size_t full = eng.size() - 1;
  if (auto s = find_fixdiv_split(eng, full, &rep.splits_examined)) {
    rep.verdict = IrredVerdict::Reducible;
    rep.split = std::make_pair(f.select(eng.counts(*s), eng.fixed_divisor(*s), f.sign()),
                               f.select(eng.counts(full - *s), eng.fixed_divisor(full - *s)));
    rep.reason = "factor multiset splits with matching fixed divisors";
    return rep;
  }
  rep.verdict = IrredVerdict::Irreducible;
  rep.reason = "no splitting of the factor multiset preserves the fixed divisor";
  return rep;
}

}  // namespace ivp
