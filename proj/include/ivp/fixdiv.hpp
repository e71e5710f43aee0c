#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "ivp/error.hpp"
#include "ivp/factored.hpp"
#include "ivp/integer.hpp"
#include "ivp/modular.hpp"
#include "ivp/poly.hpp"

namespace ivp {

inline constexpr unsigned kDefaultMaxDepth = 64;

/// gcd of g(0), ..., g(deg g); |g(0)| for constants. Stops early at 1.
inline Integer fixed_divisor_window(const IntPoly& g) {
  if (g.is_zero()) throw InputError("fixed divisor of the zero polynomial");
  Integer d = 0;
  for (int a = 0; a <= g.degree(); ++a) {
    d = gcd(d, g(Integer(a)));
    if (d == 1) break;
  }
  return abs(d);
}

/// Minimum over b in the class t mod p^j of sum_i mults[i] * v_p(g_i(b)).
///
/// Explores the p-adic residue tree breadth first. A node r mod p^K is exact
/// when every factor has valuation < K there (valuations below K depend only
/// on b mod p^K); otherwise its lower bound is refined into p children,
/// unless the bound already reaches the best exact value. `cap(i, K, r)`
/// must return min(v_p(g_i(r)), K). j = 0 means all integers.
template <class CapFn>
unsigned min_class_valuation(std::span<const unsigned> mults, unsigned p, unsigned j,
                             const Integer& t, unsigned max_depth, CapFn&& cap) {
  unsigned best = std::numeric_limits<unsigned>::max();
  std::deque<std::pair<unsigned, Integer>> queue;
  const Integer pj = ipow(Integer(p), j);
  if (j == 0)
    for (unsigned r = 0; r < p; ++r) queue.emplace_back(1, Integer(r));
  else
    queue.emplace_back(j, mod(t, pj));
  while (!queue.empty()) {
    auto [K, r] = std::move(queue.front());
    queue.pop_front();
    unsigned lower = 0;
    bool exact = true;
    for (std::size_t i = 0; i < mults.size(); ++i) {
      if (mults[i] == 0) continue;
      const unsigned c = cap(i, K, r);
      lower += mults[i] * c;
      if (c >= K) exact = false;
    }
    if (exact) {
      best = std::min(best, lower);
      continue;
    }
    if (lower >= best) continue;
    if (K + 1 > max_depth)
      throw ResourceError("valuation search depth exceeded (K_max = " + std::to_string(max_depth) + ")");
    const Integer pk = ipow(Integer(p), K);
    for (unsigned s = 0; s < p; ++s) queue.emplace_back(K + 1, r + s * pk);
  }
  return best;
}

/// Evaluates one polynomial modulo p^K repeatedly, caching coefficient
/// reductions per modulus.
class ResidueEvaluator {
 public:
  explicit ResidueEvaluator(IntPoly g) : g_(std::move(g)) {}

  /// min(v_p(g(r)), K) for 0 <= r < p^K.
  unsigned capped(const Integer& r, unsigned p, unsigned K) {
    const Integer m = ipow(Integer(p), K);
    if (m >= Integer(kWordModulusLimit)) return capped_valuation_at(g_, r, p, K);
    if (reduced_.size() <= K) reduced_.resize(K + 1);
    auto& red = reduced_[K];
    if (!red) red.emplace(g_, static_cast<std::uint64_t>(m));
    std::uint64_t v = (*red)(static_cast<std::uint64_t>(r));
    if (v == 0) return K;
    unsigned e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    return e;
  }

 private:
  IntPoly g_;
  std::vector<std::optional<ReducedPoly>> reduced_;
};

/// v_p(fixdiv(prod g_i^mults_i)) by the residue-tree search.
inline unsigned product_min_valuation(std::span<const IntPoly> polys, std::span<const unsigned> mults,
                                      unsigned p, unsigned max_depth = kDefaultMaxDepth) {
  std::vector<ResidueEvaluator> ev(polys.begin(), polys.end());
  return min_class_valuation(mults, p, 0, Integer(0), max_depth,
                             [&](std::size_t i, unsigned K, const Integer& r) { return ev[i].capped(r, p, K); });
}

/// Fixed divisor of prod g_i^mults_i without expanding the product. Only
/// primes up to the total degree can divide the fixed divisor of a primitive
/// product, and only those dividing a few sampled values need the tree search.
inline Integer fixed_divisor_product(std::span<const IntPoly> polys, std::span<const unsigned> mults,
                                     unsigned max_depth = kDefaultMaxDepth) {
  Integer contents = 1;
  std::vector<IntPoly> prim;
  int deg = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].is_zero()) throw InputError("fixed divisor of the zero polynomial");
    const Integer c = content(polys[i]);
    contents *= ipow(c, mults[i]);
    prim.push_back(polys[i].divided_by(c));
    deg += prim.back().degree() * static_cast<int>(mults[i]);
  }
  if (deg == 0) {
    Integer v = 1;
    for (std::size_t i = 0; i < prim.size(); ++i) v *= ipow(prim[i].coeff(0), mults[i]);
    return abs(v) * contents;
  }
  Integer sample = 0;
  for (int a = 0; a <= std::min(deg, 3); ++a) {
    Integer v = 1;
    for (std::size_t i = 0; i < prim.size(); ++i) v *= ipow(prim[i](Integer(a)), mults[i]);
    sample = gcd(sample, v);
  }
  Integer d = 1;
  for (unsigned p : primes_up_to(static_cast<unsigned>(deg))) {
    if (sample % p != 0) continue;
    const unsigned v = product_min_valuation(prim, mults, p, max_depth);
    d *= ipow(Integer(p), v);
  }
  return d * contents;
}

/// Fixed divisor of g: the window gcd for moderate degree, the local search
/// beyond it.
inline Integer fixed_divisor(const IntPoly& g) {
  if (g.is_zero()) throw InputError("fixed divisor of the zero polynomial");
  if (g.degree() <= 64) return fixed_divisor_window(g);
  const IntPoly polys[1] = {g};
  const unsigned mults[1] = {1};
  return fixed_divisor_product(polys, mults);
}

inline Integer fixed_divisor(const FactoredIVP& f) {
  const auto polys = f.polys();
  const auto mults = f.multiplicities();
  return fixed_divisor_product(polys, mults);
}

inline bool is_image_primitive(const IntPoly& g) { return fixed_divisor(g) == 1; }

/// Membership in Int(Z): the denominator divides the numerator's fixed divisor.
inline bool is_member(const FactoredIVP& f) { return fixed_divisor(f) % f.denom() == 0; }

/// Primes that may divide the fixed divisor of a primitive polynomial.
inline std::vector<unsigned> prime_bound_candidates(const IntPoly& g) {
  return g.degree() < 2 ? std::vector<unsigned>{} : primes_up_to(static_cast<unsigned>(g.degree()));
}

/// min v_p(g(b)) over b = t mod p^j.
struct ClassValuationQuery {
  IntPoly g;
  unsigned p = 2;
  unsigned j = 1;
  Integer t = 0;
};

/// Iterative deepening: at K = j, j+1, ... scan every residue mod p^K in the
/// class; the minimum m of the representatives' valuations is final once
/// m < K. Throws ResourceError past `max_depth`.
inline unsigned class_valuation(const ClassValuationQuery& q, unsigned max_depth = kDefaultMaxDepth,
                                std::uint64_t max_residues = 50'000'000) {
  if (q.g.is_zero()) throw InputError("class valuation of the zero polynomial");
  if (!is_prime(Integer(q.p))) throw InputError("modulus base must be prime");
  if (q.j < 1) throw InputError("modulus exponent must be at least 1");
  const Integer pj = ipow(Integer(q.p), q.j);
  if (q.t < 0 || q.t >= pj) throw InputError("residue must be reduced mod p^j");
  std::uint64_t count = 1;
  for (unsigned K = q.j; K <= max_depth; ++K) {
    const Integer pk = ipow(Integer(q.p), K);
    unsigned m = K;
    if (pk < Integer(kWordModulusLimit)) {
      const auto mod64 = static_cast<std::uint64_t>(pk);
      const ReducedPoly red(q.g, mod64);
      const auto t64 = static_cast<std::uint64_t>(q.t);
      const auto step = static_cast<std::uint64_t>(pj);
      for (std::uint64_t s = 0; s < count && m > 0; ++s)
        m = std::min(m, valuation_capped(Integer(red(t64 + s * step)), q.p, K));
    } else {
      for (std::uint64_t s = 0; s < count && m > 0; ++s)
        m = std::min(m, valuation_capped(eval_mod(q.g, q.t + pj * s, pk), q.p, K));
    }
    if (m < K) return m;
    count *= q.p;
    if (count > max_residues) throw ResourceError("class valuation scan exceeds residue budget");
  }
  throw ResourceError("class valuation depth exceeded (K_max = " + std::to_string(max_depth) + ")");
}

/// Class valuations at modulus p for every residue 0..p-1.
inline std::vector<unsigned> valuation_of_fixdiv_on_classes(const IntPoly& g, unsigned p,
                                                            unsigned max_depth = kDefaultMaxDepth) {
  std::vector<unsigned> out;
  for (unsigned t = 0; t < p; ++t) out.push_back(class_valuation({g, p, 1, Integer(t)}, max_depth));
  return out;
}

struct IndispensabilityResult {
  std::vector<IntPoly> family;
  std::size_t index = 0;
  unsigned p = 2;
  std::optional<Integer> witness;
};

/// Smallest z in 0..p-1 with p | g_k(z) and p not dividing any other g_i(z).
/// Both conditions depend on z mod p only, so one period is exhaustive.
inline IndispensabilityResult indispensable(const std::vector<IntPoly>& family, std::size_t k, unsigned p) {
  if (k >= family.size()) throw InputError("family index out of range");
  if (!is_prime(Integer(p))) throw InputError("p must be prime");
  IndispensabilityResult res{family, k, p, std::nullopt};
  for (unsigned z = 0; z < p; ++z) {
    bool ok = family[k](Integer(z)) % p == 0;
    for (std::size_t i = 0; ok && i < family.size(); ++i)
      if (i != k && family[i](Integer(z)) % p == 0) ok = false;
    if (ok) {
      res.witness = Integer(z);
      break;
    }
  }
  return res;
}

/// Re-evaluates a witness against its defining valuation conditions.
inline bool replay(const IndispensabilityResult& r) {
  if (!r.witness) return true;
  if (r.family[r.index](*r.witness) % r.p != 0) return false;
  for (std::size_t i = 0; i < r.family.size(); ++i)
    if (i != r.index && r.family[i](*r.witness) % r.p == 0) return false;
  return true;
}

/// Local valuation data of a family g_1..g_k at one prime p: the
/// componentwise-minimal vectors (v_p(g_1(b)), ..., v_p(g_k(b))) over all
/// integers b. For any exponents c_i >= 0 the p-part of
/// fixdiv(prod g_i^c_i) is the minimum of sum c_i * E_i over these vectors.
///
/// Built on the residue tree: a node r mod p^K is exact when every factor
/// has valuation below K there; a node whose capped vector is dominated by a
/// known exact vector cannot contribute and is dropped.
inline std::vector<std::vector<unsigned>> valuation_profile(const std::vector<IntPoly>& polys, unsigned p,
                                                            unsigned max_depth = kDefaultMaxDepth) {
  std::vector<ResidueEvaluator> ev;
  for (const auto& g : polys) ev.emplace_back(g);
  std::vector<std::vector<unsigned>> front;
  auto dominated = [&](const std::vector<unsigned>& c) {
    for (const auto& e : front) {
      bool le = true;
      for (std::size_t i = 0; i < c.size() && le; ++i) le = e[i] <= c[i];
      if (le) return true;
    }
    return false;
  };
  std::deque<std::pair<unsigned, Integer>> queue;
  for (unsigned r = 0; r < p; ++r) queue.emplace_back(1, Integer(r));
  std::vector<unsigned> c(polys.size());
  while (!queue.empty()) {
    auto [K, r] = std::move(queue.front());
    queue.pop_front();
    bool exact = true;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      c[i] = ev[i].capped(r, p, K);
      if (c[i] >= K) exact = false;
    }
    if (dominated(c)) continue;
    if (exact) {
      std::erase_if(front, [&](const std::vector<unsigned>& e) {
        for (std::size_t i = 0; i < c.size(); ++i)
          if (c[i] > e[i]) return false;
        return true;
      });
      front.push_back(c);
      continue;
    }
    if (K + 1 > max_depth)
      throw ResourceError("valuation search depth exceeded (K_max = " + std::to_string(max_depth) + ")");
    const Integer pk = ipow(Integer(p), K);
    for (unsigned s = 0; s < p; ++s) queue.emplace_back(K + 1, r + s * pk);
  }
  std::sort(front.begin(), front.end());
  return front;
}

/// Valuations of fixed divisors of all sub-products prod t_i^{c_i}, c_i <=
/// caps_i, at a fixed list of primes. Sub-multisets are addressed by a
/// mixed-radix index.
class SubproductValuations {
 public:
  SubproductValuations(std::vector<IntPoly> types, std::vector<unsigned> caps,
                       std::vector<unsigned> primes, unsigned max_depth = kDefaultMaxDepth)
      : types_(std::move(types)), caps_(std::move(caps)), primes_(std::move(primes)) {
    radix_.resize(caps_.size());
    std::size_t r = 1;
    for (std::size_t i = 0; i < caps_.size(); ++i) {
      radix_[i] = r;
      r *= caps_[i] + 1;
    }
    size_ = r;
    memo_.resize(size_);
    for (unsigned p : primes_) profiles_.push_back(valuation_profile(types_, p, max_depth));
  }

  std::size_t size() const { return size_; }
  const std::vector<unsigned>& primes() const { return primes_; }
  const std::vector<unsigned>& caps() const { return caps_; }
  const std::vector<IntPoly>& types() const { return types_; }
  const std::vector<std::vector<unsigned>>& profile(std::size_t k) const { return profiles_[k]; }

  std::size_t index(const std::vector<unsigned>& counts) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) idx += counts[i] * radix_[i];
    return idx;
  }

  std::vector<unsigned> counts(std::size_t idx) const {
    std::vector<unsigned> c(caps_.size());
    for (std::size_t i = 0; i < caps_.size(); ++i) c[i] = static_cast<unsigned>((idx / radix_[i]) % (caps_[i] + 1));
    return c;
  }

  /// Valuation vector (one entry per prime) of the fixed divisor of any
  /// count vector, capped or not.
  std::vector<unsigned> valuations_of(const std::vector<unsigned>& c) const {
    std::vector<unsigned> v(primes_.size(), 0);
    for (std::size_t k = 0; k < primes_.size(); ++k) {
      unsigned best = std::numeric_limits<unsigned>::max();
      for (const auto& e : profiles_[k]) {
        unsigned s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * e[i];
        best = std::min(best, s);
      }
      v[k] = best;
    }
    return v;
  }

  /// Memoized valuations_of(counts(idx)).
  const std::vector<unsigned>& valuations(std::size_t idx) {
    auto& slot = memo_[idx];
    if (!slot) slot = valuations_of(counts(idx));
    return *slot;
  }

  Integer fixed_divisor(std::size_t idx) { return to_integer(valuations(idx)); }

  Integer to_integer(const std::vector<unsigned>& v) const {
    Integer d = 1;
    for (std::size_t k = 0; k < primes_.size(); ++k) d *= ipow(Integer(primes_[k]), v[k]);
    return d;
  }

 private:
  std::vector<IntPoly> types_;
  std::vector<unsigned> caps_;
  std::vector<unsigned> primes_;
  std::vector<std::size_t> radix_;
  std::size_t size_ = 1;
  std::vector<std::optional<std::vector<unsigned>>> memo_;
  std::vector<std::vector<std::vector<unsigned>>> profiles_;
};

/// Prime factors of a positive integer that is known to have only small
/// prime factors (a fixed divisor); throws if factoring fails.
inline std::vector<std::pair<unsigned, unsigned>> small_factorization(const Integer& n) {
  std::vector<std::pair<Integer, unsigned>> fac;
  if (!factor_integer(n, fac)) throw InputError("cannot factor " + n.str());
  std::vector<std::pair<unsigned, unsigned>> out;
  for (const auto& [p, e] : fac) {
    if (p > Integer(std::numeric_limits<unsigned>::max())) throw InputError("prime factor too large: " + p.str());
    out.emplace_back(static_cast<unsigned>(p), e);
  }
  return out;
}

}  // namespace ivp
