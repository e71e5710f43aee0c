#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ivp/expression.hpp"
#include "ivp/factored.hpp"
#include "ivp/fixdiv.hpp"
#include "ivp/irred.hpp"
#include "ivp/powfact.hpp"

namespace ivp {

struct SearchBounds {
  /// Candidates tried per prime or root search.
  std::uint64_t max_candidates = 2'000'000;
  /// Enumerate f^k to confirm displayed factorizations when f^k has at most
  /// this many factor slots (0 disables).
  unsigned enumeration_slots = 16;
  unsigned max_depth = kDefaultMaxDepth;
};

struct FamilyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// A generated element with the parameters found by the searches, the
/// factorization the construction predicts for a power, and the replayed
/// self-checks.
struct FamilyInstance {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
  FactoredIVP f;
  std::vector<IntPoly> special;  // h, or c and d, or c_i/d_i, or G_i
  std::vector<Integer> roots;
  std::optional<Factorization> displayed;
  unsigned displayed_power = 0;
  std::vector<FamilyCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const FamilyCheck& c) { return c.passed; });
  }
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

inline void require_odd_prime(unsigned p, const char* name) {
  require(p > 2 && is_prime(Integer(p)), std::string(name) + " must be an odd prime");
}

/// Least prime x > lower with x = residue mod modulus, not in `used`.
inline Integer least_prime_in_progression(const Integer& residue, const Integer& modulus, const Integer& lower,
                                          const std::set<Integer>& used, std::uint64_t max_candidates) {
  Integer x = mod(residue, modulus);
  if (x <= lower) x += ((lower - x) / modulus + 1) * modulus;
  for (std::uint64_t i = 0; i < max_candidates; ++i, x += modulus)
    if (!used.count(x) && is_prime(x)) return x;
  throw ResourceError("no prime = " + residue.str() + " mod " + modulus.str() + " above " + lower.str() +
                      " within " + std::to_string(max_candidates) + " candidates");
}

/// Ascending search for integers a = p mod p^2 that are nonzero modulo every
/// prime in `avoid` and satisfy `extra`.
class RootSearch {
 public:
  RootSearch(unsigned p, std::vector<unsigned> avoid, std::uint64_t max_candidates)
      : p_(p), avoid_(std::move(avoid)), max_(max_candidates) {}

  template <class Pred>
  Integer next(const Integer& after, Pred&& extra) const {
    const Integer p2 = Integer(p_) * p_;
    Integer a = p_;
    if (a <= after) a += ((after - a) / p2 + 1) * p2;
    for (std::uint64_t i = 0; i < max_; ++i, a += p2) {
      if (!extra(a)) continue;
      bool ok = true;
      for (unsigned l : avoid_)
        if (a % l == 0) {
          ok = false;
          break;
        }
      if (ok) return a;
    }
    throw ResourceError("root search exhausted after " + std::to_string(max_) + " candidates");
  }

 private:
  unsigned p_;
  std::vector<unsigned> avoid_;
  std::uint64_t max_;
};

inline std::vector<unsigned> primes_except(unsigned bound, std::initializer_list<unsigned> skip) {
  std::vector<unsigned> out;
  for (unsigned l : primes_up_to(bound))
    if (std::find(skip.begin(), skip.end(), l) == skip.end()) out.push_back(l);
  return out;
}

/// `count` roots: the first `distinct` admissible values, then copies of the first.
template <class Pred>
std::vector<Integer> choose_roots(const RootSearch& rs, unsigned count, unsigned distinct, Pred&& extra) {
  std::vector<Integer> out;
  Integer last = 0;
  for (unsigned i = 0; i < distinct; ++i) {
    last = rs.next(last, extra);
    out.push_back(last);
  }
  while (out.size() < count) out.push_back(out.front());
  return out;
}

inline std::size_t factor_index(const FactoredIVP& f, const IntPoly& g) {
  for (std::size_t i = 0; i < f.factors().size(); ++i)
    if (f.factors()[i].poly == g) return i;
  throw InputError("polynomial " + to_string(g) + " is not a factor");
}

/// Counts over f's factors for a list of (polynomial, exponent) pairs.
inline std::vector<unsigned> counts_of(const FactoredIVP& f, const std::vector<std::pair<IntPoly, unsigned>>& polys) {
  std::vector<unsigned> c(f.factors().size(), 0);
  for (const auto& [g, e] : polys) c[factor_index(f, g)] += e;
  return c;
}

/// Element with the given factor counts over f's factor list (counts may
/// exceed f's multiplicities, for parts of powers).
inline FactoredIVP part(const FactoredIVP& f, const std::vector<unsigned>& counts, const Integer& denom) {
  std::vector<Factor> fs;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) fs.push_back({f.factors()[i].poly, counts[i], f.factors()[i].cert});
  return FactoredIVP::from_factors(1, denom, std::move(fs));
}

inline std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

inline void add_check(FamilyInstance& inst, std::string name, bool passed, std::string detail = {}) {
  inst.checks.push_back({std::move(name), passed, std::move(detail)});
}

/// Min over b = t mod p^j of sum mults_i v_p(g_i(b)) without expanding.
inline unsigned class_min_valuation(const std::vector<IntPoly>& polys, const std::vector<unsigned>& mults, unsigned p,
                                    unsigned j, const Integer& t, unsigned max_depth = kDefaultMaxDepth) {
  std::vector<ResidueEvaluator> ev(polys.begin(), polys.end());
  return min_class_valuation(mults, p, j, t, max_depth,
                             [&](std::size_t i, unsigned K, const Integer& r) { return ev[i].capped(r, p, K); });
}

/// Records the checks every generator output must pass: membership,
/// irreducibility with denominator equal to the fixed divisor, and the
/// predicted factorization of f^k (valid, essentially different, and found by
/// the enumerator when small enough).
inline void standard_checks(FamilyInstance& inst, const SearchBounds& bounds) {
  const Integer fd = fixed_divisor(inst.f);
  add_check(inst, "member", fd % inst.f.denom() == 0, "fixdiv = " + fd.str());
  const auto rep = is_irreducible_intz(inst.f, {32, bounds.max_depth});
  add_check(inst, "irreducible", rep.verdict == IrredVerdict::Irreducible, rep.reason);
  if (!inst.displayed) return;
  const unsigned k = inst.displayed_power;
  const FactoredIVP fk = inst.f.pow(k);
  bool parts_ok = associated_intz(inst.displayed->product(), fk);
  add_check(inst, "displayed product equals f^" + std::to_string(k), parts_ok);
  bool irr = true;
  for (const auto& p : inst.displayed->parts)
    irr = irr && is_irreducible_intz(p, {32, bounds.max_depth}).verdict == IrredVerdict::Irreducible;
  add_check(inst, "displayed parts irreducible", irr);
  add_check(inst, "displayed essentially different from f^" + std::to_string(k),
            !essentially_same(*inst.displayed, trivial_factorization(inst.f, k)));
  if (bounds.enumeration_slots > 0 && fk.slots() <= bounds.enumeration_slots) {
    const auto all = enumerate_factorizations(fk, {bounds.enumeration_slots, bounds.max_depth, 1});
    const bool found = std::find(all.begin(), all.end(), *inst.displayed) != all.end();
    add_check(inst, "displayed factorization found by enumeration", found,
              std::to_string(all.size()) + " factorizations of f^" + std::to_string(k));
  }
}

inline FamilyInstance finish(FamilyInstance inst, const SearchBounds& bounds) {
  standard_checks(inst, bounds);
  for (const auto& c : inst.checks)
    if (!c.passed)
      throw HypothesisError(inst.family + ": self-check '" + c.name + "' failed" +
                            (c.detail.empty() ? "" : " (" + c.detail + ")"));
  return inst;
}

inline unsigned euler_phi_prime_power(unsigned p, unsigned n) {
  return static_cast<unsigned>(ipow(Integer(p), n - 1) * (p - 1));
}

inline bool is_qr_unit(const Integer& u, unsigned p) {
  // Euler's criterion; for odd p a unit is a square mod p^n iff mod p.
  return ivp::powmod(u, Integer((p - 1) / 2), Integer(p)) == 1;
}

}  // namespace detail

struct Type1Params {
  unsigned p = 3;
  unsigned n = 2;
  unsigned distinct_roots = 2;
  /// Expert override for a_1..a_n; conditions are replayed, not assumed.
  std::vector<Integer> roots;
  SearchBounds bounds;
};

/// h * prod (x - a_i) / p^n with h = x^phi(p^n) - q.
inline FamilyInstance construct_type1(const Type1Params& prm) {
  using namespace detail;
  require_odd_prime(prm.p, "p");
  require(prm.n > 1, "n must exceed 1");
  require(prm.distinct_roots >= 1 && prm.distinct_roots <= prm.n, "distinct_roots must lie in 1..n");
  const unsigned p = prm.p, n = prm.n;
  const unsigned phi = euler_phi_prime_power(p, n);
  const unsigned L = phi + n;
  const Integer pn1 = ipow(Integer(p), n + 1);
  const Integer q = least_prime_in_progression(1, pn1, L, {}, prm.bounds.max_candidates);
  std::vector<Integer> roots = prm.roots;
  if (roots.empty()) {
    const RootSearch rs(p, primes_except(L, {p}), prm.bounds.max_candidates);
    roots = choose_roots(rs, n, prm.distinct_roots, [](const Integer&) { return true; });
  }
  require(roots.size() == n, "expected n roots");

  FamilyInstance inst;
  inst.family = "type1";
  inst.params = {{"p", std::to_string(p)}, {"n", std::to_string(n)}, {"q", q.str()}, {"roots", join(roots)}};
  const IntPoly h = IntPoly::binomial(phi, q);
  std::vector<IntPoly> raw{h};
  for (const auto& a : roots) raw.push_back(IntPoly::linear(a));
  inst.f = canonicalize(1, ipow(Integer(p), n), raw);
  inst.special = {h};
  inst.roots = roots;

  // Root conditions.
  bool div = true, avoid = true;
  std::set<Integer> classes;
  for (const auto& a : roots) {
    div = div && a % p == 0;
    classes.insert(mod(a, Integer(p) * p));
    for (unsigned l : primes_except(L, {p})) avoid = avoid && a % l != 0;
  }
  add_check(inst, "roots divisible by p", div);
  add_check(inst, "roots miss a class of p^2 divisible by p", classes.size() < p);
  add_check(inst, "roots nonzero mod primes l <= " + std::to_string(L) + ", l != p", avoid);
  unsigned hmin = std::numeric_limits<unsigned>::max();
  for (unsigned u = 1; u < p; ++u) hmin = std::min(hmin, class_valuation({h, p, 1, Integer(u)}, prm.bounds.max_depth));
  add_check(inst, "min v_p(h(u)) over units is n", hmin == n, "min = " + std::to_string(hmin));
  std::vector<IntPoly> lin;
  for (const auto& a : roots) lin.push_back(IntPoly::linear(a));
  const unsigned lmin = class_min_valuation(lin, std::vector<unsigned>(n, 1), p, 1, 0, prm.bounds.max_depth);
  add_check(inst, "min v_p(prod(w-a_i)) over w in pZ is n", lmin == n, "min = " + std::to_string(lmin));

  const auto i2 = static_cast<std::size_t>(
      std::find_if(roots.begin(), roots.end(), [&](const Integer& a) { return a != roots[0]; }) - roots.begin());
  if (i2 < n) {
    // a_1 != a_2 swap: h (x-a_1)^2 prod_{i>=3} / p^n and h (x-a_2)^2 prod_{i>=3} / p^n.
    std::vector<std::pair<IntPoly, unsigned>> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (i != 0 && i != i2) rest.push_back({IntPoly::linear(roots[i]), 1});
    auto a = rest, b = rest;
    a.push_back({h, 1});
    a.push_back({IntPoly::linear(roots[0]), 2});
    b.push_back({h, 1});
    b.push_back({IntPoly::linear(roots[i2]), 2});
    const Integer pn = ipow(Integer(p), n);
    inst.displayed = make_factorization({part(inst.f, counts_of(inst.f, a), pn), part(inst.f, counts_of(inst.f, b), pn)});
    inst.displayed_power = 2;
  }
  return finish(std::move(inst), prm.bounds);
}

/// Square/non-square valuation split of c = x^(phi/2) - q and d = x^(phi/2) - r
/// at every unit class mod p^(n+1).
inline bool check_square_split(const IntPoly& c, const IntPoly& d, unsigned p, unsigned n, std::string& detail) {
  const Integer m = ipow(Integer(p), n + 1);
  if (m > 5'000'000) {
    detail = "skipped: p^(n+1) too large to sample";
    return true;
  }
  const auto mm = static_cast<std::uint64_t>(m);
  const ReducedPoly rc(c, mm), rd(d, mm);
  for (std::uint64_t u = 1; u < mm; ++u) {
    if (u % p == 0) continue;
    const bool sq = detail::is_qr_unit(Integer(u), p);
    const bool cn = valuation_capped(Integer(rc(u)), p, n + 1) >= n;
    const bool dn = valuation_capped(Integer(rd(u)), p, n + 1) >= n;
    if (cn != sq || dn != !sq) {
      detail = "fails at u = " + std::to_string(u);
      return false;
    }
  }
  detail = "all unit classes mod " + m.str();
  return true;
}

struct Type1cdParams {
  unsigned p = 3;
  unsigned n = 2;
  unsigned distinct_roots = 2;
  SearchBounds bounds;
};

/// Type I with h = c*d, c = x^(phi/2) - q, d = x^(phi/2) - r, q = 1 and
/// r = -1 mod p^(n+1).
inline FamilyInstance construct_type1_cd(const Type1cdParams& prm) {
  using namespace detail;
  require_odd_prime(prm.p, "p");
  require(prm.n > 1, "n must exceed 1");
  require(prm.distinct_roots >= 1 && prm.distinct_roots <= prm.n, "distinct_roots must lie in 1..n");
  const unsigned p = prm.p, n = prm.n;
  const unsigned phi = euler_phi_prime_power(p, n);
  const unsigned L = phi + n;
  const Integer pn1 = ipow(Integer(p), n + 1);
  const Integer q = least_prime_in_progression(1, pn1, L, {}, prm.bounds.max_candidates);
  const Integer r = least_prime_in_progression(-1, pn1, L, {}, prm.bounds.max_candidates);
  const RootSearch rs(p, primes_except(L, {p}), prm.bounds.max_candidates);
  const auto roots = choose_roots(rs, n, prm.distinct_roots, [](const Integer&) { return true; });

  FamilyInstance inst;
  inst.family = "type1cd";
  inst.params = {{"p", std::to_string(p)}, {"n", std::to_string(n)}, {"q", q.str()}, {"r", r.str()},
                 {"roots", join(roots)}};
  const IntPoly c = IntPoly::binomial(phi / 2, q), d = IntPoly::binomial(phi / 2, r);
  std::vector<IntPoly> raw{c, d};
  for (const auto& a : roots) raw.push_back(IntPoly::linear(a));
  inst.f = canonicalize(1, ipow(Integer(p), n), raw);
  inst.special = {c, d};
  inst.roots = roots;

  std::string det;
  const bool split = check_square_split(c, d, p, n, det);
  add_check(inst, "square/non-square valuation split", split, det);
  unsigned hmin = std::numeric_limits<unsigned>::max();
  for (unsigned u = 1; u < p; ++u) hmin = std::min(hmin, class_min_valuation({c, d}, {1, 1}, p, 1, u, prm.bounds.max_depth));
  add_check(inst, "min v_p(c(u)d(u)) over units is n", hmin == n, "min = " + std::to_string(hmin));

  if (prm.distinct_roots >= 2) {
    std::vector<std::pair<IntPoly, unsigned>> rest;
    for (std::size_t i = 2; i < n; ++i) rest.push_back({IntPoly::linear(roots[i]), 1});
    auto a = rest, b = rest;
    for (auto* v : {&a, &b}) {
      v->push_back({c, 1});
      v->push_back({d, 1});
    }
    a.push_back({IntPoly::linear(roots[0]), 2});
    b.push_back({IntPoly::linear(roots[1]), 2});
    const Integer pn = ipow(Integer(p), n);
    inst.displayed = make_factorization({part(inst.f, counts_of(inst.f, a), pn), part(inst.f, counts_of(inst.f, b), pn)});
    inst.displayed_power = 2;
  }
  return finish(std::move(inst), prm.bounds);
}

struct MixedQParams {
  unsigned p = 5;
  unsigned q = 3;
  unsigned n = 6;
  SearchBounds bounds;
};

/// h * prod (x - a_i) / (q p^n) where a_1..a_q run through all residues mod q
/// and the remaining a_i are 1 mod q.
inline FamilyInstance construct_mixed_q(const MixedQParams& prm) {
  using namespace detail;
  require_odd_prime(prm.p, "p");
  require_odd_prime(prm.q, "q");
  require(prm.p != prm.q, "p and q must be distinct");
  require(prm.n >= 2 * prm.q, "n must be at least 2q");
  const unsigned p = prm.p, q = prm.q, n = prm.n;
  const unsigned phi = euler_phi_prime_power(p, n);
  const unsigned L = phi + n;
  const Integer r = least_prime_in_progression(1, ipow(Integer(p), n + 1), L, {}, prm.bounds.max_candidates);
  // Primes l < L other than p and q.
  auto avoid = primes_except(L, {p, q});
  if (!avoid.empty() && avoid.back() == L) avoid.pop_back();
  const RootSearch rs(p, avoid, prm.bounds.max_candidates);
  std::vector<Integer> roots;
  for (unsigned i = 0; i < n; ++i) {
    const unsigned target = i < q ? i : 1;
    Integer after = 0;
    while (true) {
      const Integer a = rs.next(after, [&](const Integer& x) { return x % q == target; });
      if (std::find(roots.begin(), roots.end(), a) == roots.end()) {
        roots.push_back(a);
        break;
      }
      after = a;
    }
  }

  FamilyInstance inst;
  inst.family = "mixed_q";
  inst.params = {{"p", std::to_string(p)}, {"q", std::to_string(q)}, {"n", std::to_string(n)},
                 {"r", r.str()}, {"roots", join(roots)}};
  const IntPoly h = IntPoly::binomial(phi, r);
  std::vector<IntPoly> raw{h};
  for (const auto& a : roots) raw.push_back(IntPoly::linear(a));
  const Integer denom = ipow(Integer(p), n) * q;
  inst.f = canonicalize(1, denom, raw);
  inst.special = {h};
  inst.roots = roots;

  std::set<unsigned> res;
  bool rest_one = true;
  for (unsigned i = 0; i < n; ++i) {
    const auto rq = static_cast<unsigned>(mod(roots[i], Integer(q)));
    if (i < q) res.insert(rq);
    else rest_one = rest_one && rq == 1;
  }
  add_check(inst, "a_1..a_q complete residues mod q", res.size() == q);
  add_check(inst, "a_i = 1 mod q for i > q", rest_one);
  unsigned hmin = std::numeric_limits<unsigned>::max();
  for (unsigned u = 1; u < p; ++u) hmin = std::min(hmin, class_min_valuation({h}, {1}, p, 1, u, prm.bounds.max_depth));
  add_check(inst, "min v_p(h(u)) over units is n", hmin == n, "min = " + std::to_string(hmin));

  std::vector<std::pair<IntPoly, unsigned>> a{{h, 1}}, b{{h, 1}};
  for (unsigned i = 0; i < n; ++i) {
    const IntPoly li = IntPoly::linear(roots[i]);
    if (i < q) a.push_back({li, 2});
    else if (i < 2 * q) b.push_back({li, 2});
    else {
      a.push_back({li, 1});
      b.push_back({li, 1});
    }
  }
  const Integer pn = ipow(Integer(p), n);
  inst.displayed = make_factorization(
      {part(inst.f, counts_of(inst.f, a), pn * q * q), part(inst.f, counts_of(inst.f, b), pn)});
  inst.displayed_power = 2;
  return finish(std::move(inst), prm.bounds);
}

struct TwoPrimeParams {
  unsigned p = 5;
  unsigned q = 3;
  unsigned n = 2;
  unsigned m = 2;
  SearchBounds bounds;
};

/// (x^t - r) prod (x - a_i) / (p^n q^m), t = lcm(phi(q^m), phi(p^n)).
inline FamilyInstance construct_two_prime(const TwoPrimeParams& prm) {
  using namespace detail;
  require_odd_prime(prm.p, "p");
  require_odd_prime(prm.q, "q");
  require(prm.q < prm.p, "q must be smaller than p");
  require(prm.m > 1 && prm.m <= prm.n, "need 1 < m <= n");
  const unsigned p = prm.p, q = prm.q, n = prm.n, m = prm.m;
  const unsigned phip = euler_phi_prime_power(p, n), phiq = euler_phi_prime_power(q, m);
  const unsigned t = std::lcm(phip, phiq);
  const unsigned L = t + n;
  const Integer r = least_prime_in_progression(1, ipow(Integer(p), n + 1) * ipow(Integer(q), m + 1), L, {},
                                               prm.bounds.max_candidates);
  auto avoid = primes_except(L, {p, q});
  if (!avoid.empty() && avoid.back() == L) avoid.pop_back();
  const RootSearch rs(p, avoid, prm.bounds.max_candidates);
  std::vector<Integer> roots;
  Integer after = 0;
  const Integer q2 = Integer(q) * q;
  for (unsigned i = 0; i < m; ++i) {
    after = rs.next(after, [&](const Integer& x) { return mod(x, q2) == q; });
    roots.push_back(after);
  }
  after = 0;
  for (unsigned i = m; i < n; ++i) {
    after = rs.next(after, [&](const Integer& x) { return mod(x, Integer(q)) == 1; });
    roots.push_back(after);
  }

  FamilyInstance inst;
  inst.family = "two_prime";
  inst.params = {{"p", std::to_string(p)}, {"q", std::to_string(q)}, {"n", std::to_string(n)},
                 {"m", std::to_string(m)}, {"t", std::to_string(t)}, {"r", r.str()}, {"roots", join(roots)}};
  const IntPoly h = IntPoly::binomial(t, r);
  std::vector<IntPoly> raw{h};
  for (const auto& a : roots) raw.push_back(IntPoly::linear(a));
  inst.f = canonicalize(1, ipow(Integer(p), n) * ipow(Integer(q), m), raw);
  inst.special = {h};
  inst.roots = roots;

  unsigned pmin = std::numeric_limits<unsigned>::max(), qmin = pmin;
  for (unsigned u = 1; u < p; ++u) pmin = std::min(pmin, class_min_valuation({h}, {1}, p, 1, u, prm.bounds.max_depth));
  for (unsigned u = 1; u < q; ++u) qmin = std::min(qmin, class_min_valuation({h}, {1}, q, 1, u, prm.bounds.max_depth));
  add_check(inst, "v_p(h(u)) >= n on units mod p", pmin >= n, "min = " + std::to_string(pmin));
  add_check(inst, "v_q(h(w)) >= m on units mod q", qmin >= m, "min = " + std::to_string(qmin));

  if (m >= 2 || n - m >= 2) {
    // Swap two distinct roots of the same group.
    const std::size_t i1 = m >= 2 ? 0 : m, i2 = i1 + 1;
    std::vector<std::pair<IntPoly, unsigned>> rest{{h, 1}};
    for (std::size_t i = 0; i < n; ++i)
      if (i != i1 && i != i2) rest.push_back({IntPoly::linear(roots[i]), 1});
    auto a = rest, b = rest;
    a.push_back({IntPoly::linear(roots[i1]), 2});
    b.push_back({IntPoly::linear(roots[i2]), 2});
    inst.displayed =
        make_factorization({part(inst.f, counts_of(inst.f, a), inst.f.denom()), part(inst.f, counts_of(inst.f, b), inst.f.denom())});
    inst.displayed_power = 2;
  }
  return finish(std::move(inst), prm.bounds);
}

struct Type2Params {
  unsigned p = 3;
  unsigned n = 2;
  unsigned m = 1;
  unsigned distinct_roots = 0;  // 0 = all m distinct
  SearchBounds bounds;
};

/// c * d * prod_{i<=m} (x - a_i) / p^m with n > m; f^n has the factorization
/// prod_i [c d (x-a_i)^n / p^n] * c^(n-m) d^(n-m).
inline FamilyInstance construct_type2(const Type2Params& prm) {
  using namespace detail;
  require_odd_prime(prm.p, "p");
  require(prm.m >= 1 && prm.n > prm.m, "need n > m >= 1");
  const unsigned p = prm.p, n = prm.n, m = prm.m;
  const unsigned distinct = prm.distinct_roots == 0 ? m : prm.distinct_roots;
  require(distinct <= m, "distinct_roots must lie in 1..m");
  const unsigned phi = euler_phi_prime_power(p, n);
  const unsigned L = phi + m;
  const Integer pn1 = ipow(Integer(p), n + 1);
  const Integer q = least_prime_in_progression(1, pn1, L, {}, prm.bounds.max_candidates);
  const Integer r = least_prime_in_progression(-1, pn1, L, {}, prm.bounds.max_candidates);
  const RootSearch rs(p, primes_except(L, {p}), prm.bounds.max_candidates);
  const auto roots = choose_roots(rs, m, distinct, [](const Integer&) { return true; });

  FamilyInstance inst;
  inst.family = "type2";
  inst.params = {{"p", std::to_string(p)}, {"n", std::to_string(n)}, {"m", std::to_string(m)},
                 {"q", q.str()}, {"r", r.str()}, {"roots", join(roots)}};
  const IntPoly c = IntPoly::binomial(phi / 2, q), d = IntPoly::binomial(phi / 2, r);
  std::vector<IntPoly> raw{c, d};
  for (const auto& a : roots) raw.push_back(IntPoly::linear(a));
  inst.f = canonicalize(1, ipow(Integer(p), m), raw);
  inst.special = {c, d};
  inst.roots = roots;

  std::string det;
  add_check(inst, "square/non-square valuation split", check_square_split(c, d, p, n, det), det);
  add_check(inst, "fixdiv(c*d) = 1", fixed_divisor_product(std::vector<IntPoly>{c, d}, std::vector<unsigned>{1, 1}) == 1);

  std::vector<FactoredIVP> parts;
  const Integer pn = ipow(Integer(p), n);
  for (const auto& a : roots) parts.push_back(part(inst.f, counts_of(inst.f, {{c, 1}, {d, 1}, {IntPoly::linear(a), n}}), pn));
  for (unsigned i = 0; i < n - m; ++i) {
    parts.push_back(part(inst.f, counts_of(inst.f, {{c, 1}}), 1));
    parts.push_back(part(inst.f, counts_of(inst.f, {{d, 1}}), 1));
  }
  inst.displayed = make_factorization(std::move(parts));
  inst.displayed_power = n;
  return finish(std::move(inst), prm.bounds);
}

struct ReplacementResult {
  std::vector<IntPoly> replacements;
  Integer modulus;  // M
  std::vector<Integer> multipliers;  // F_i = f_i + c_i * M
  std::size_t combinations_checked = 0;
};

namespace detail {

/// Replacement property over all J and J = J1 + J2: the fixed divisor of
/// prod_{J1} f * prod_{J2} F equals that of prod_J f. Returns the number of
/// combinations checked, or nullopt on the first failure.
inline std::optional<std::size_t> replacement_property_holds(const std::vector<IntPoly>& f, const std::vector<IntPoly>& F,
                                                             unsigned max_depth) {
  const std::size_t k = f.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 3;
  std::vector<IntPoly> polys;
  std::vector<unsigned> ones;
  std::map<std::size_t, Integer> base;  // by subset mask
  std::size_t checked = 0;
  for (std::size_t code = 0; code < total; ++code) {
    // digit 0: not in J, 1: in J1 (keep f), 2: in J2 (use F)
    std::size_t c = code, mask = 0;
    polys.clear();
    std::vector<IntPoly> orig;
    for (std::size_t i = 0; i < k; ++i, c /= 3) {
      const unsigned dgt = c % 3;
      if (dgt == 0) continue;
      mask |= std::size_t(1) << i;
      polys.push_back(dgt == 1 ? f[i] : F[i]);
      orig.push_back(f[i]);
    }
    if (polys.empty()) continue;
    const std::vector<unsigned> mults(polys.size(), 1);
    auto it = base.find(mask);
    if (it == base.end()) it = base.emplace(mask, fixed_divisor_product(orig, mults, max_depth)).first;
    if (fixed_divisor_product(polys, mults, max_depth) != it->second) return std::nullopt;
    ++checked;
  }
  return checked;
}

}  // namespace detail

/// Monic replacements F_i = f_i + c_i M of the same degrees, irreducible over
/// Q and pairwise distinct, whose substitution never changes a fixed divisor.
/// M is a product of prime powers p^E_p over the relevant primes (those up to
/// the total degree, plus any in `primes`), with E_p one above the valuation
/// of the full product's fixed divisor; each c_i is the least positive value
/// giving a certified irreducible F_i distinct from the others. The property
/// is verified exhaustively; on failure the exponents are deepened.
inline ReplacementResult replacement_polys(const std::vector<IntPoly>& f, std::vector<unsigned> primes = {},
                                           const SearchBounds& bounds = {}, unsigned max_deepen = 4) {
  detail::require(!f.empty(), "replacement needs a nonempty list (I != {})");
  int deg = 0;
  for (const auto& g : f) {
    detail::require(g.degree() >= 1 && g.leading() == 1, "replacement inputs must be monic and non-constant");
    deg += g.degree();
  }
  for (unsigned l : primes_up_to(static_cast<unsigned>(deg)))
    if (std::find(primes.begin(), primes.end(), l) == primes.end()) primes.push_back(l);
  std::sort(primes.begin(), primes.end());
  const std::vector<unsigned> ones(f.size(), 1);
  const Integer fd = fixed_divisor_product(f, ones, bounds.max_depth);
  std::string last_failure;
  for (unsigned extra = 1; extra <= max_deepen; ++extra) {
    Integer M = 1;
    for (unsigned l : primes) {
      unsigned e = 0;
      Integer t = fd;
      while (t % l == 0) {
        t /= l;
        ++e;
      }
      M *= ipow(Integer(l), e + extra);
    }
    ReplacementResult res;
    res.modulus = M;
    for (const auto& g : f) {
      bool found = false;
      for (std::uint64_t c = 1; c <= bounds.max_candidates && c <= 100000; ++c) {
        const IntPoly F = g + IntPoly::constant(Integer(c) * M);
        if (std::find(res.replacements.begin(), res.replacements.end(), F) != res.replacements.end()) continue;
        if (certify_q_irreducible(F).status != CertifyResult::Status::Certified) continue;
        res.replacements.push_back(F);
        res.multipliers.push_back(Integer(c));
        found = true;
        break;
      }
      if (!found) throw ResourceError("no certified irreducible replacement for " + to_string(g));
    }
    if (auto n = detail::replacement_property_holds(f, res.replacements, bounds.max_depth)) {
      res.combinations_checked = *n;
      return res;
    }
    last_failure = "fixed-divisor property failed with M = " + M.str();
  }
  throw ResourceError("replacement search exhausted: " + last_failure);
}

struct OverlapInstance {
  unsigned p = 5;
  std::vector<Integer> roots;       // a_1..a_p
  std::vector<IntPoly> g;           // g_1, g_2, g_3
  ReplacementResult replacement;    // G_1, G_2, G_3
  FactoredIVP f;                    // G_1 G_2 G_3 / p^3
  Factorization displayed;          // of f^2
  std::vector<unsigned> e_single, e_pair;
  unsigned e_triple = 0;
  std::vector<FamilyCheck> checks;
};

/// f = G_1 G_2 G_3 / p^3 with f^2 = (G_1G_2/p^2)(G_2G_3/p^2)(G_3G_1/p^2).
inline OverlapInstance construct_overlap(unsigned p, const SearchBounds& bounds = {}) {
  using namespace detail;
  require(p > 3 && is_prime(Integer(p)), "p must be a prime greater than 3");
  OverlapInstance out;
  out.p = p;
  // a_i = i-1 mod p and 0 mod every smaller prime: complete mod p, never complete mod q < p.
  Integer P = 1;
  for (unsigned l : primes_up_to(p - 1)) P *= l;
  for (unsigned i = 0; i < p; ++i) {
    Integer a = 0;
    while (mod(a, Integer(p)) != i) a += P;
    out.roots.push_back(a);
  }
  auto lin = [&](unsigned i) { return IntPoly::linear(out.roots[i]); };
  IntPoly tail = IntPoly::constant(1);
  for (unsigned i = 3; i < p; ++i) tail = tail * lin(i);
  out.g = {pow(lin(1), 2) * pow(lin(2), 2) * tail, pow(lin(0), 2) * pow(lin(2), 2) * tail,
           pow(lin(0), 2) * pow(lin(1), 2) * tail};
  out.replacement = replacement_polys(out.g, {p}, bounds);
  const auto& G = out.replacement.replacements;

  const std::vector<unsigned> one{1}, two{1, 1}, three{1, 1, 1};
  auto ep = [&](const std::vector<IntPoly>& ps) {
    return product_min_valuation(ps, std::vector<unsigned>(ps.size(), 1), p, bounds.max_depth);
  };
  for (int i = 0; i < 3; ++i) out.e_single.push_back(ep({G[i]}));
  for (int i = 0; i < 3; ++i) out.e_pair.push_back(ep({G[i], G[(i + 1) % 3]}));
  out.e_triple = ep({G[0], G[1], G[2]});
  auto chk = [&](std::string name, bool ok, std::string det = {}) { out.checks.push_back({std::move(name), ok, std::move(det)}); };
  chk("e_p(G_i) = 0", std::all_of(out.e_single.begin(), out.e_single.end(), [](unsigned v) { return v == 0; }));
  chk("e_p(G_iG_j) = 2", std::all_of(out.e_pair.begin(), out.e_pair.end(), [](unsigned v) { return v == 2; }));
  chk("e_p(G_1G_2G_3) = 3", out.e_triple == 3);

  const Integer p3 = ipow(Integer(p), 3), p2 = Integer(p) * p;
  out.f = canonicalize(1, p3, G);
  const auto rep = is_irreducible_intz(out.f, {32, bounds.max_depth});
  chk("f irreducible", rep.verdict == IrredVerdict::Irreducible, rep.reason);
  std::vector<FactoredIVP> parts;
  for (int i = 0; i < 3; ++i)
    parts.push_back(part(out.f, counts_of(out.f, {{G[i], 1}, {G[(i + 1) % 3], 1}}), p2));
  out.displayed = make_factorization(std::move(parts));
  bool irr = true;
  for (const auto& x : out.displayed.parts) irr = irr && is_irreducible_intz(x).verdict == IrredVerdict::Irreducible;
  chk("displayed parts irreducible", irr);
  chk("displayed product equals f^2", associated_intz(out.displayed.product(), out.f.pow(2)));
  chk("displayed essentially different from f*f", !essentially_same(out.displayed, trivial_factorization(out.f, 2)));
  for (const auto& c : out.checks)
    if (!c.passed) throw HypothesisError("overlap: self-check '" + c.name + "' failed");
  return out;
}

struct PatternParams {
  unsigned p = 3;
  unsigned n = 2;
  unsigned s = 2;
  unsigned t = 2;
  unsigned distinct_roots = 0;  // 0 = all n distinct
  SearchBounds bounds;
};

struct PatternInstance {
  PatternParams params;
  std::vector<Integer> q, r, roots;
  std::vector<IntPoly> c, d;
  FactoredIVP G;
};

/// G = prod c_i * prod d_j * prod (x - a_k) / p^n.
inline PatternInstance construct_pattern(const PatternParams& prm) {
  using namespace detail;
  require_odd_prime(prm.p, "p");
  require(prm.n >= 1, "n must be positive");
  require(prm.n > 1 && prm.s > 1 && prm.t > 1, "n, s, t must exceed 1");
  const unsigned distinct = prm.distinct_roots == 0 ? prm.n : prm.distinct_roots;
  require(distinct <= prm.n, "distinct_roots must lie in 1..n");
  PatternInstance out;
  out.params = prm;
  const unsigned p = prm.p, n = prm.n;
  const unsigned phi = euler_phi_prime_power(p, n);
  const unsigned L = phi + n;
  const Integer pn1 = ipow(Integer(p), n + 1);
  std::set<Integer> used;
  for (unsigned i = 0; i < prm.s; ++i) {
    out.q.push_back(least_prime_in_progression(1, pn1, L, used, prm.bounds.max_candidates));
    used.insert(out.q.back());
    out.c.push_back(IntPoly::binomial(phi / 2, out.q.back()));
  }
  for (unsigned i = 0; i < prm.t; ++i) {
    out.r.push_back(least_prime_in_progression(-1, pn1, L, used, prm.bounds.max_candidates));
    used.insert(out.r.back());
    out.d.push_back(IntPoly::binomial(phi / 2, out.r.back()));
  }
  const RootSearch rs(p, primes_except(L, {p}), prm.bounds.max_candidates);
  out.roots = choose_roots(rs, n, distinct, [](const Integer&) { return true; });
  std::vector<IntPoly> raw = out.c;
  raw.insert(raw.end(), out.d.begin(), out.d.end());
  for (const auto& a : out.roots) raw.push_back(IntPoly::linear(a));
  out.G = canonicalize(1, ipow(Integer(p), n), raw);
  return out;
}

/// (B, theta, sigma): B a set partition of {0..n-1} with blocks ordered by
/// least element, theta and sigma injections from blocks into {0..s-1} and
/// {0..t-1}.
struct PatternTriple {
  std::vector<std::vector<unsigned>> blocks;
  std::vector<unsigned> theta;
  std::vector<unsigned> sigma;
};

namespace detail {

inline void set_partitions(unsigned n, std::vector<std::vector<std::vector<unsigned>>>& out) {
  std::vector<unsigned> rgs(n, 0);
  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned mx) {
    if (i == n) {
      std::vector<std::vector<unsigned>> blocks(mx + 1);
      for (unsigned k = 0; k < n; ++k) blocks[rgs[k]].push_back(k);
      out.push_back(std::move(blocks));
      return;
    }
    for (unsigned v = 0; v <= mx + 1; ++v) {
      rgs[i] = v;
      rec(i + 1, std::max(mx, v));
    }
  };
  if (n == 0) return;
  rgs[0] = 0;
  rec(1, 0);
}

inline void injections(unsigned k, unsigned range, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> cur;
  std::vector<bool> used(range, false);
  std::function<void()> rec = [&]() {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v < range; ++v) {
      if (used[v]) continue;
      used[v] = true;
      cur.push_back(v);
      rec();
      cur.pop_back();
      used[v] = false;
    }
  };
  rec();
}

}  // namespace detail

struct PatternFactorization {
  PatternTriple triple;
  Factorization factorization;
};

/// Every triple with its induced factorization of G; each g_i is checked
/// irreducible and each length s + t - m_B.
inline std::vector<PatternFactorization> enumerate_pattern_triples(const PatternInstance& inst) {
  const auto& prm = inst.params;
  if (prm.n == 0) throw InputError("n must be positive");
  std::vector<std::vector<std::vector<unsigned>>> partitions;
  detail::set_partitions(prm.n, partitions);
  std::vector<PatternFactorization> out;
  for (const auto& B : partitions) {
    const auto mB = static_cast<unsigned>(B.size());
    if (mB > prm.s || mB > prm.t) continue;
    std::vector<std::vector<unsigned>> thetas, sigmas;
    detail::injections(mB, prm.s, thetas);
    detail::injections(mB, prm.t, sigmas);
    for (const auto& th : thetas)
      for (const auto& sg : sigmas) {
        std::vector<FactoredIVP> parts;
        std::vector<bool> cu(prm.s, false), du(prm.t, false);
        for (unsigned i = 0; i < mB; ++i) {
          cu[th[i]] = du[sg[i]] = true;
          std::vector<std::pair<IntPoly, unsigned>> ps{{inst.c[th[i]], 1}, {inst.d[sg[i]], 1}};
          for (unsigned j : B[i]) ps.push_back({IntPoly::linear(inst.roots[j]), 1});
          const FactoredIVP gi = detail::part(inst.G, detail::counts_of(inst.G, ps),
                                              ipow(Integer(prm.p), static_cast<unsigned>(B[i].size())));
          if (is_irreducible_intz(gi).verdict != IrredVerdict::Irreducible)
            throw HypothesisError("pattern part " + std::to_string(i) + " is not irreducible");
          parts.push_back(gi);
        }
        for (unsigned j = 0; j < prm.s; ++j)
          if (!cu[j]) parts.push_back(detail::part(inst.G, detail::counts_of(inst.G, {{inst.c[j], 1}}), 1));
        for (unsigned j = 0; j < prm.t; ++j)
          if (!du[j]) parts.push_back(detail::part(inst.G, detail::counts_of(inst.G, {{inst.d[j], 1}}), 1));
        auto fac = make_factorization(std::move(parts));
        if (fac.length() != prm.s + prm.t - mB) throw HypothesisError("pattern length differs from s + t - m_B");
        out.push_back({{B, th, sg}, std::move(fac)});
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemma verifiers. Index subsets of the factor multiset are count vectors
// over f.factors().

struct InterchangeablePair {
  std::vector<unsigned> J1, J2;
  Integer fixdiv_left;   // fixdiv(prod J1 * prod (I \ J2))
  Integer fixdiv_right;  // fixdiv(prod J2 * prod (I \ J1))
  Integer b;
  bool element_disjoint = false;
};

namespace detail {

inline bool is_proper_nonempty(const std::vector<unsigned>& J, const std::vector<unsigned>& m) {
  bool nonempty = false, proper = false;
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (J[i] > m[i]) return false;
    nonempty = nonempty || J[i] > 0;
    proper = proper || J[i] < m[i];
  }
  return nonempty && proper;
}

inline void require_irreducible(const FactoredIVP& f, unsigned max_slots) {
  const auto rep = is_irreducible_intz(f, {max_slots, kDefaultMaxDepth});
  if (rep.verdict != IrredVerdict::Irreducible)
    throw InputError(std::string("element must be irreducible (") + to_string(rep.verdict) + ")");
}

}  // namespace detail

/// All unordered disjoint pairs of nonempty proper sub-multisets J1, J2 with
/// fixdiv(J1 + (I - J2)) = fixdiv(J2 + (I - J1)) = b.
inline std::vector<InterchangeablePair> find_interchangeable(const FactoredIVP& f, unsigned max_slots = 16) {
  if (f.slots() > max_slots) throw ResourceError("factor multiset exceeds the slot cap of " + std::to_string(max_slots));
  detail::require_irreducible(f, max_slots);
  const auto m = f.multiplicities();
  std::vector<unsigned> caps(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) caps[i] = 2 * m[i];
  SubproductValuations eng(f.polys(), caps, prime_list(f.denom()));
  const auto target = eng.valuations_of(m);
  std::vector<std::vector<unsigned>> subs;
  std::vector<unsigned> cur(m.size(), 0);
  while (true) {
    std::size_t k = 0;
    while (k < cur.size() && cur[k] == m[k]) cur[k++] = 0;
    if (k == cur.size()) break;
    ++cur[k];
    if (detail::is_proper_nonempty(cur, m)) subs.push_back(cur);
  }
  std::vector<InterchangeablePair> out;
  for (std::size_t a = 0; a < subs.size(); ++a)
    for (std::size_t b = a + 1; b < subs.size(); ++b) {
      const auto& J1 = subs[a];
      const auto& J2 = subs[b];
      bool disjoint = true;
      for (std::size_t i = 0; i < m.size() && disjoint; ++i) disjoint = J1[i] + J2[i] <= m[i];
      if (!disjoint) continue;
      std::vector<unsigned> L(m.size()), R(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        L[i] = J1[i] + m[i] - J2[i];
        R[i] = J2[i] + m[i] - J1[i];
      }
      if (eng.valuations_of(L) != target || eng.valuations_of(R) != target) continue;
      bool ed = true;
      for (std::size_t i = 0; i < m.size() && ed; ++i) ed = !(J1[i] > 0 && J2[i] > 0);
      out.push_back({J1, J2, eng.to_integer(eng.valuations_of(L)), eng.to_integer(eng.valuations_of(R)), f.denom(), ed});
    }
  return out;
}

/// Outcome of applying one of the non-absolute-irreducibility lemmas.
struct LemmaApplication {
  unsigned power = 0;
  /// The product the criterion builds, before refinement.
  std::vector<FactoredIVP> display;
  Factorization factorization;
  bool essentially_different = false;
  std::vector<std::pair<std::string, std::string>> data;
};

namespace detail {

inline LemmaApplication finish_lemma(const FactoredIVP& f, unsigned k, std::vector<FactoredIVP> display,
                                     std::vector<std::pair<std::string, std::string>> data) {
  LemmaApplication out;
  out.power = k;
  out.data = std::move(data);
  FactoredIVP prod = display.front();
  for (std::size_t i = 1; i < display.size(); ++i) prod = prod * display[i];
  if (!associated_intz(prod, f.pow(k))) throw HypothesisError("lemma product differs from f^" + std::to_string(k));
  std::vector<FactoredIVP> parts;
  for (const auto& d : display) {
    if (!is_member(d)) throw HypothesisError("lemma part " + format_expression(d) + " is not in Int(Z)");
    const auto ref = refine_to_irreducibles(d);
    parts.insert(parts.end(), ref.parts.begin(), ref.parts.end());
  }
  out.display = std::move(display);
  out.factorization = make_factorization(std::move(parts));
  out.essentially_different = !essentially_same(out.factorization, trivial_factorization(f, k));
  return out;
}

}  // namespace detail

/// f^k = [J1 + (I - J2)]/b * [J2 + (I - J1)]/b * f^(k-2), refined.
inline LemmaApplication apply_lemma_type1(const FactoredIVP& f, const InterchangeablePair& pair, unsigned k) {
  detail::require(k >= 2, "k must be at least 2");
  const auto m = f.multiplicities();
  detail::require(pair.J1.size() == m.size() && pair.J2.size() == m.size(), "subset size mismatch");
  detail::require(detail::is_proper_nonempty(pair.J1, m) && detail::is_proper_nonempty(pair.J2, m),
                  "subsets must be nonempty and proper");
  std::vector<unsigned> L(m.size()), R(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (pair.J1[i] + pair.J2[i] > m[i]) throw InputError("subsets must be disjoint");
    if (pair.J1[i] > 0 && pair.J2[i] > 0) throw InputError("subsets must be element-disjoint");
    L[i] = pair.J1[i] + m[i] - pair.J2[i];
    R[i] = pair.J2[i] + m[i] - pair.J1[i];
  }
  const FactoredIVP A = detail::part(f, L, f.denom()), B = detail::part(f, R, f.denom());
  if (fixed_divisor(A) != f.denom() || fixed_divisor(B) != f.denom())
    throw HypothesisError("pair is not interchangeable: fixed divisors " + fixed_divisor(A).str() + ", " +
                          fixed_divisor(B).str() + " vs b = " + f.denom().str());
  std::vector<FactoredIVP> display{A, B};
  for (unsigned i = 2; i < k; ++i) display.push_back(f.with_sign(1));
  return detail::finish_lemma(f.with_sign(1), k, std::move(display), {});
}

/// Root classes s mod p of prod_J g must carry valuation above e_p; then
/// f^(n+1) = [(prod_J)^n (prod_{I-J})^(n+1) / b^(n+1)] * prod_J, n = max e_p.
inline LemmaApplication apply_lemma_type2(const FactoredIVP& f, const std::vector<unsigned>& J) {
  const auto m = f.multiplicities();
  detail::require(J.size() == m.size(), "subset size mismatch");
  detail::require(detail::is_proper_nonempty(J, m), "J must be nonempty and proper");
  detail::require_irreducible(f, 32);
  const auto polys = f.polys();
  std::vector<std::pair<std::string, std::string>> data;
  unsigned n = 0;
  for (const auto& [p, e] : small_factorization(f.denom())) {
    n = std::max(n, e);
    for (unsigned s = 0; s < p; ++s) {
      Integer v = 1;
      for (std::size_t i = 0; i < polys.size(); ++i) v *= ipow(polys[i](Integer(s)), J[i]);
      if (v % p != 0) continue;
      const unsigned cv = detail::class_min_valuation(polys, J, p, 1, s);
      data.push_back({"v_" + std::to_string(p) + "[" + std::to_string(s) + " mod " + std::to_string(p) + "]",
                      std::to_string(cv)});
      if (cv <= e)
        throw HypothesisError("hypothesis fails at p = " + std::to_string(p) + ", root class " + std::to_string(s) +
                              ": valuation " + std::to_string(cv) + " <= e_p = " + std::to_string(e));
    }
  }
  data.push_back({"n", std::to_string(n)});
  std::vector<unsigned> L(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) L[i] = n * J[i] + (n + 1) * (m[i] - J[i]);
  // The integer fixdiv(prod_J) divides b; moving it across keeps both parts in Int(Z).
  const FactoredIVP fJ = f.select(J, 1);
  const Integer d = fixed_divisor(fJ);
  const FactoredIVP left = detail::part(f, L, ipow(f.denom(), n + 1) / d);
  const FactoredIVP right = detail::part(f, J, d);
  return detail::finish_lemma(f.with_sign(1), n + 1, {left, right}, std::move(data));
}

/// Single-prime denominator p^n: S = classes mod p where prod_J has
/// valuation above n, T = the rest with common valuation e in [1, n);
/// f^(m-e) = [(prod_J)^(n-e) (prod_{I-J})^(m-e) / p^((n-e)m)] * [prod_J / p^e]^(m-n).
inline LemmaApplication apply_lemma_type2i(const FactoredIVP& f, const std::vector<unsigned>& J) {
  const auto mult = f.multiplicities();
  detail::require(J.size() == mult.size(), "subset size mismatch");
  detail::require(detail::is_proper_nonempty(J, mult), "J must be nonempty and proper");
  const auto fac = small_factorization(f.denom());
  if (fac.size() != 1 || fac[0].second < 2) throw InputError("denominator must be p^n with n > 1");
  detail::require_irreducible(f, 32);
  const unsigned p = fac[0].first, n = fac[0].second;
  const auto polys = f.polys();
  std::vector<unsigned> rest(mult.size());
  for (std::size_t i = 0; i < mult.size(); ++i) rest[i] = mult[i] - J[i];
  std::vector<unsigned> S, T, vJ, vR;
  for (unsigned t = 0; t < p; ++t) {
    vJ.push_back(detail::class_min_valuation(polys, J, p, 1, t));
    vR.push_back(detail::class_min_valuation(polys, rest, p, 1, t));
    (vJ.back() > n ? S : T).push_back(t);
  }
  std::vector<std::pair<std::string, std::string>> data;
  for (unsigned t = 0; t < p; ++t)
    data.push_back({"v_J[" + std::to_string(t) + " mod " + std::to_string(p) + "]", std::to_string(vJ[t])});
  if (S.empty()) throw HypothesisError("S is empty: no class has valuation above n = " + std::to_string(n));
  if (T.empty()) throw HypothesisError("T is empty: e is undefined");
  const unsigned e = vJ[T.front()];
  for (unsigned t : T) {
    if (vJ[t] != e)
      throw HypothesisError("class " + std::to_string(t) + " has valuation " + std::to_string(vJ[t]) + ", not e = " +
                            std::to_string(e));
    if (vJ[t] + vR[t] < n)
      throw HypothesisError("class " + std::to_string(t) + ": valuations " + std::to_string(vJ[t]) + " + " +
                            std::to_string(vR[t]) + " < n = " + std::to_string(n));
  }
  if (e < 1 || e >= n) throw HypothesisError("e = " + std::to_string(e) + " outside [1, n)");
  unsigned m = std::numeric_limits<unsigned>::max();
  for (unsigned s : S) m = std::min(m, vJ[s]);
  const unsigned k = m - e;
  data.push_back({"n", std::to_string(n)});
  data.push_back({"m", std::to_string(m)});
  data.push_back({"e", std::to_string(e)});
  data.push_back({"k", std::to_string(k)});
  std::vector<unsigned> L(mult.size());
  for (std::size_t i = 0; i < mult.size(); ++i) L[i] = (n - e) * J[i] + k * rest[i];
  std::vector<FactoredIVP> display{detail::part(f, L, ipow(Integer(p), (n - e) * m))};
  for (unsigned i = 0; i < m - n; ++i) display.push_back(detail::part(f, J, ipow(Integer(p), e)));
  return detail::finish_lemma(f.with_sign(1), k, std::move(display), std::move(data));
}

}  // namespace ivp
