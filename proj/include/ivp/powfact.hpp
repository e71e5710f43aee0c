#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "ivp/factored.hpp"
#include "ivp/fixdiv.hpp"
#include "ivp/irred.hpp"

namespace ivp {

/// A multiset of Int(Z)-irreducible parts, sign-normalized and sorted.
struct Factorization {
  std::vector<FactoredIVP> parts;

  std::size_t length() const { return parts.size(); }

  FactoredIVP product() const {
    if (parts.empty()) throw InputError("empty factorization");
    FactoredIVP r = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) r = r * parts[i];
    return r;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend auto operator<=>(const Factorization& a, const Factorization& b) {
    if (auto c = a.parts.size() <=> b.parts.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                                  b.parts.end());
  }
};

inline Factorization make_factorization(std::vector<FactoredIVP> parts) {
  for (auto& p : parts) p = p.with_sign(1);
  std::sort(parts.begin(), parts.end());
  return {std::move(parts)};
}

/// f^n = f * ... * f
inline Factorization trivial_factorization(const FactoredIVP& f, unsigned n) {
  return make_factorization(std::vector<FactoredIVP>(n, f));
}

/// Same length and pairwise associated after reordering.
inline bool essentially_same(const Factorization& a, const Factorization& b) {
  return make_factorization(a.parts) == make_factorization(b.parts);
}

/// Weakly decreasing positive blocks.
struct NumberPartition {
  std::vector<unsigned> blocks;
  unsigned sum() const {
    unsigned s = 0;
    for (unsigned b : blocks) s += b;
    return s;
  }
  friend bool operator==(const NumberPartition&, const NumberPartition&) = default;
  friend auto operator<=>(const NumberPartition&, const NumberPartition&) = default;
};

struct FactorizationType {
  NumberPartition partition;
  friend bool operator==(const FactorizationType&, const FactorizationType&) = default;
  friend auto operator<=>(const FactorizationType&, const FactorizationType&) = default;
};

/// Multiplicities of pairwise non-associated parts, sorted descending.
inline FactorizationType type_of(const Factorization& f) {
  const auto norm = make_factorization(f.parts);
  std::vector<unsigned> blocks;
  for (std::size_t i = 0; i < norm.parts.size();) {
    std::size_t j = i;
    while (j < norm.parts.size() && norm.parts[j] == norm.parts[i]) ++j;
    blocks.push_back(static_cast<unsigned>(j - i));
    i = j;
  }
  std::sort(blocks.rbegin(), blocks.rend());
  return {{blocks}};
}

inline std::string to_string(const FactorizationType& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.partition.blocks.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.partition.blocks[i]);
  }
  return s + ")";
}

struct EnumerateOptions {
  unsigned max_slots = 16;
  unsigned max_depth = kDefaultMaxDepth;
  unsigned threads = 1;
};

namespace detail {

class FactorizationSearch {
 public:
  FactorizationSearch(const FactoredIVP& target, const EnumerateOptions& opt)
      : target_(target),
        eng_(target.polys(), target.multiplicities(), prime_list(target.denom()), opt.max_depth),
        irreducible_(eng_.size(), -1),
        threads_(std::max(1U, opt.threads)) {}

  std::vector<Factorization> run() {
    const std::size_t full = eng_.size() - 1;
    const auto budget = eng_.valuations(full);
    if (threads_ > 1) precompute();
    std::vector<Factorization> out;
    const auto rem = eng_.counts(full);
    if (threads_ == 1) {
      std::vector<std::size_t> blocks;
      recurse(rem, full, budget, SIZE_MAX, SIZE_MAX, blocks, out);
    } else {
      // Fan out over the first block; every branch only reads the tables.
      std::vector<std::size_t> firsts = candidates(rem, budget, SIZE_MAX, SIZE_MAX);
      std::vector<std::future<std::vector<Factorization>>> jobs;
      std::vector<std::vector<Factorization>> results(firsts.size());
      std::size_t next = 0;
      auto worker = [&](std::size_t i) {
        std::vector<Factorization> local;
        std::vector<std::size_t> blocks{firsts[i]};
        const auto c = eng_.counts(firsts[i]);
        auto r = rem;
        auto b = budget;
        const auto& v = eng_.valuations(firsts[i]);
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c[k];
        for (std::size_t k = 0; k < b.size(); ++k) b[k] -= v[k];
        recurse(r, full - firsts[i], b, leader(rem), firsts[i], blocks, local);
        return local;
      };
      while (next < firsts.size()) {
        jobs.clear();
        const std::size_t start = next;
        for (unsigned t = 0; t < threads_ && next < firsts.size(); ++t, ++next)
          jobs.push_back(std::async(std::launch::async, worker, next));
        for (std::size_t j = 0; j < jobs.size(); ++j) results[start + j] = jobs[j].get();
      }
      for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool block_irreducible(std::size_t idx) {
    auto& memo = irreducible_[idx];
    if (memo < 0) {
      const auto c = eng_.counts(idx);
      unsigned slots = 0;
      for (unsigned x : c) slots += x;
      const auto& v = eng_.valuations(idx);
      const bool trivial_fixdiv = std::all_of(v.begin(), v.end(), [](unsigned x) { return x == 0; });
      if (slots == 1)
        memo = 1;
      else if (trivial_fixdiv)
        memo = 0;
      else
        memo = find_fixdiv_split(eng_, idx) ? 0 : 1;
    }
    return memo == 1;
  }

 private:
  static std::size_t leader(const std::vector<unsigned>& rem) {
    for (std::size_t i = 0; i < rem.size(); ++i)
      if (rem[i] > 0) return i;
    return SIZE_MAX;
  }

  void precompute() {
    for (std::size_t i = 1; i < eng_.size(); ++i) block_irreducible(i);
  }

  // Irreducible blocks containing the leading remaining factor that fit the
  // valuation budget; blocks sharing a leader come in non-increasing index
  // order so each multiset partition is produced once.
  std::vector<std::size_t> candidates(const std::vector<unsigned>& rem, const std::vector<unsigned>& budget,
                                      std::size_t prev_leader, std::size_t prev_idx) {
    std::vector<std::size_t> out;
    const std::size_t L = leader(rem);
    std::vector<unsigned> sub(rem.size(), 0);
    while (true) {
      std::size_t k = 0;
      while (k < sub.size() && sub[k] == rem[k]) sub[k++] = 0;
      if (k == sub.size()) break;
      ++sub[k];
      if (sub[L] == 0) continue;
      const std::size_t idx = eng_.index(sub);
      if (L == prev_leader && idx > prev_idx) continue;
      const auto& v = eng_.valuations(idx);
      bool fits = true;
      for (std::size_t i = 0; i < v.size() && fits; ++i) fits = v[i] <= budget[i];
      if (!fits || !block_irreducible(idx)) continue;
      out.push_back(idx);
    }
    return out;
  }

  void recurse(const std::vector<unsigned>& rem, std::size_t rem_idx, const std::vector<unsigned>& budget,
               std::size_t prev_leader, std::size_t prev_idx, std::vector<std::size_t>& blocks,
               std::vector<Factorization>& out) {
    if (rem_idx == 0) {
      if (std::all_of(budget.begin(), budget.end(), [](unsigned x) { return x == 0; })) out.push_back(build(blocks));
      return;
    }
    // The parts of any split of `rem` have fixed divisors multiplying to a
    // divisor of fixdiv(rem).
    const auto& vr = eng_.valuations(rem_idx);
    for (std::size_t i = 0; i < vr.size(); ++i)
      if (vr[i] < budget[i]) return;
    const std::size_t L = leader(rem);
    for (std::size_t idx : candidates(rem, budget, prev_leader, prev_idx)) {
      const auto c = eng_.counts(idx);
      const auto& v = eng_.valuations(idx);
      auto r = rem;
      auto b = budget;
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c[k];
      for (std::size_t k = 0; k < b.size(); ++k) b[k] -= v[k];
      blocks.push_back(idx);
      recurse(r, rem_idx - idx, b, L, idx, blocks, out);
      blocks.pop_back();
    }
  }

  Factorization build(const std::vector<std::size_t>& blocks) {
    std::vector<FactoredIVP> parts;
    for (std::size_t idx : blocks) parts.push_back(target_.select(eng_.counts(idx), eng_.fixed_divisor(idx)));
    return make_factorization(std::move(parts));
  }

  const FactoredIVP& target_;
  SubproductValuations eng_;
  std::vector<signed char> irreducible_;
  unsigned threads_;
};

}  // namespace detail

/// Every essentially different factorization of F into Int(Z)-irreducibles.
///
/// Each part of a factorization is (product of a block of F's factors) over
/// the fixed divisor of that block, so the search runs over multiset
/// partitions of the factor multiset into blocks that are irreducible and
/// whose fixed divisors multiply to the denominator.
///
/// Preconditions: sign +1 and denominator equal to the fixed divisor of the
/// numerator (otherwise integer constants could occur as parts).
inline std::vector<Factorization> enumerate_factorizations(const FactoredIVP& F, const EnumerateOptions& opt = {}) {
  if (F.sign() != 1) throw InputError("enumeration expects sign +1");
  if (F.slots() > opt.max_slots)
    throw ResourceError("factor multiset has " + std::to_string(F.slots()) + " slots, above the cap of " +
                        std::to_string(opt.max_slots));
  const Integer fd = fixed_divisor(F);
  if (fd % F.denom() != 0) throw InputError("not a member of Int(Z) (fixdiv = " + fd.str() + ")");
  if (fd != F.denom())
    throw InputError("denominator " + F.denom().str() + " is a proper divisor of fixdiv " + fd.str() +
                     ": prime constants would be factors, which is unsupported");
  return detail::FactorizationSearch(F, opt).run();
}

inline std::vector<std::size_t> length_spectrum(const FactoredIVP& F, const EnumerateOptions& opt = {}) {
  std::vector<std::size_t> out;
  for (const auto& f : enumerate_factorizations(F, opt)) out.push_back(f.length());
  std::sort(out.begin(), out.end());
  return out;
}

/// Product equals the target and every part is irreducible in Int(Z).
inline bool is_factorization_of(const Factorization& fac, const FactoredIVP& target) {
  if (fac.parts.empty()) return false;
  if (!associated_intz(fac.product(), target)) return false;
  for (const auto& p : fac.parts)
    if (is_irreducible_intz(p).verdict != IrredVerdict::Irreducible) return false;
  return true;
}

/// Splits g into irreducibles by repeatedly taking the first split found by
/// the irreducibility check.
inline Factorization refine_to_irreducibles(const FactoredIVP& g, const IrredOptions& opt = {}) {
  std::vector<FactoredIVP> done;
  std::vector<FactoredIVP> todo{g.with_sign(1)};
  while (!todo.empty()) {
    FactoredIVP cur = std::move(todo.back());
    todo.pop_back();
    auto rep = is_irreducible_intz(cur, opt);
    switch (rep.verdict) {
      case IrredVerdict::Irreducible:
        done.push_back(std::move(cur));
        break;
      case IrredVerdict::Reducible:
        if (!rep.split)
          throw HypothesisError("cannot refine " + std::string("element with denominator ") + cur.denom().str() +
                                ": integer constant factor " + rep.constant_split->str());
        todo.push_back(rep.split->first.with_sign(1));
        todo.push_back(rep.split->second.with_sign(1));
        break;
      case IrredVerdict::NotMember:
        throw HypothesisError("refinement target is not in Int(Z)");
      case IrredVerdict::Inconclusive:
        throw ResourceError(rep.reason);
    }
  }
  return make_factorization(std::move(done));
}

struct NonAbsWitness {
  unsigned power = 0;
  Factorization factorization;
  std::size_t factorization_count = 0;
};

/// Smallest n in [2, N] such that f^n has a factorization essentially
/// different from f*...*f, with the first such factorization in canonical
/// order. No result means absolutely irreducible up to N, not a proof.
inline std::optional<NonAbsWitness> find_nonabs_witness(const FactoredIVP& f, unsigned N,
                                                        const EnumerateOptions& opt = {}) {
  const auto rep = is_irreducible_intz(f, {opt.max_slots, opt.max_depth});
  if (rep.verdict != IrredVerdict::Irreducible)
    throw InputError(std::string("element is not irreducible (") + to_string(rep.verdict) + ")");
  const FactoredIVP base = f.with_sign(1);
  for (unsigned n = 2; n <= N; ++n) {
    const auto all = enumerate_factorizations(base.pow(n), opt);
    const auto trivial = trivial_factorization(base, n);
    for (const auto& fac : all)
      if (!essentially_same(fac, trivial)) return NonAbsWitness{n, fac, all.size()};
  }
  return std::nullopt;
}

}  // namespace ivp
