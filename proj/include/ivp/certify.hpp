#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivp/integer.hpp"
#include "ivp/modular.hpp"
#include "ivp/poly.hpp"

namespace ivp {

/// Which irreducibility criterion over Q fired.
enum class CertMethod {
  Degree1,
  RationalRootExcluded,
  Eisenstein,
  ModPIrreducible,
  ExhaustiveSmallDegree,
  Asserted,
};

inline const char* to_string(CertMethod m) {
  switch (m) {
    case CertMethod::Degree1: return "Degree1";
    case CertMethod::RationalRootExcluded: return "RationalRootExcluded";
    case CertMethod::Eisenstein: return "Eisenstein";
    case CertMethod::ModPIrreducible: return "ModPIrreducible";
    case CertMethod::ExhaustiveSmallDegree: return "ExhaustiveSmallDegree";
    case CertMethod::Asserted: return "Asserted";
  }
  return "?";
}

/// Evidence that a primitive integer polynomial is irreducible over Q.
/// `prime` is set for Eisenstein and ModPIrreducible, `shift` for Eisenstein
/// (the criterion applies to g(x + shift)).
struct IrredCertificate {
  CertMethod method = CertMethod::Asserted;
  Integer prime = 0;
  Integer shift = 0;

  friend bool operator==(const IrredCertificate&, const IrredCertificate&) = default;
};

struct CertifyOptions {
  int eisenstein_shift = 10;        // shifts c in [-C, C]
  unsigned shift_degree_limit = 200;  // nonzero shifts only below this degree
  unsigned modp_prime_limit = 200;
  unsigned modp_degree_limit = 400;
  std::size_t exhaustive_budget = 200'000;  // candidate interpolants
};

struct CertifyResult {
  enum class Status { Certified, Reducible, Inconclusive };
  Status status = Status::Inconclusive;
  IrredCertificate certificate;
  // Nontrivial split left * right == g when Reducible.
  IntPoly left;
  IntPoly right;
};

namespace detail {

// ---- F_p[x] arithmetic, p < 2^32, coefficients low degree first ----

using FpPoly = std::vector<std::uint64_t>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint64_t p) {
  const std::uint64_t inv = fp_inv(m.back(), p);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t q = a.back() * inv % p;
    const std::size_t off = a.size() - 1 - dm;
    if (q != 0)
      for (std::size_t j = 0; j <= dm; ++j) a[off + j] = (a[off + j] + (p - q) * m[j]) % p;
    a.pop_back();
    fp_trim(a);
  }
  fp_trim(a);
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return fp_mod(std::move(r), m, p);
}

inline FpPoly fp_powmod(FpPoly base, Integer e, const FpPoly& m, std::uint64_t p) {
  FpPoly r{1};
  r = fp_mod(r, m, p);
  base = fp_mod(base, m, p);
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) r = fp_mulmod(r, base, m, p);
    e >>= 1;
    if (e > 0) base = fp_mulmod(base, base, m, p);
  }
  return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  fp_trim(a);
  return a;
}

/// Rabin's test: monic-or-not f of degree n is irreducible over F_p iff
/// x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n.
inline bool fp_irreducible(const FpPoly& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  const FpPoly x{0, 1};
  std::vector<FpPoly> frob(n + 1);  // frob[i] = x^(p^i) mod f
  frob[0] = fp_mod(x, f, p);
  for (std::size_t i = 1; i <= n; ++i) frob[i] = fp_powmod(frob[i - 1], Integer(p), f, p);
  if (fp_sub(frob[n], frob[0], p).size() != 0) return false;
  for (unsigned r : primes_up_to(static_cast<unsigned>(n))) {
    if (n % r != 0) continue;
    const FpPoly g = fp_gcd(f, fp_sub(frob[n / r], frob[0], p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

inline FpPoly to_fp(const IntPoly& g, std::uint64_t p) {
  FpPoly r;
  r.reserve(g.coeffs().size());
  for (const auto& c : g.coeffs()) r.push_back(reduce(c, p));
  fp_trim(r);
  return r;
}

// ---- individual criteria ----

/// Rational root u/v of g (deg 2..3 path). Returns false if factoring the
/// end coefficients fails.
inline bool find_rational_root(const IntPoly& g, bool& found, Integer& u, Integer& v) {
  found = false;
  if (g.coeff(0) == 0) {
    found = true;
    u = 0;
    v = 1;
    return true;
  }
  const auto us = divisors(g.coeff(0));
  const auto vs = divisors(g.leading());
  if (us.empty() || vs.empty()) return false;
  const int n = g.degree();
  for (const auto& vv : vs) {
    for (const auto& uu0 : us) {
      if (gcd(uu0, vv) != 1) continue;
      for (int s : {1, -1}) {
        const Integer uu = s * uu0;
        Integer acc = 0, upow = 1;
        std::vector<Integer> vpow(n + 1);
        vpow[0] = 1;
        for (int i = 1; i <= n; ++i) vpow[i] = vpow[i - 1] * vv;
        for (int i = 0; i <= n; ++i) {
          acc += g.coeff(i) * upow * vpow[n - i];
          upow *= uu;
        }
        if (acc == 0) {
          found = true;
          u = uu;
          v = vv;
          return true;
        }
      }
    }
  }
  return true;
}

inline bool eisenstein_holds(const IntPoly& h, const Integer& p) {
  if (h.degree() < 1) return false;
  if (h.leading() % p == 0) return false;
  for (int i = 0; i < h.degree(); ++i)
    if (h.coeff(i) % p != 0) return false;
  return h.coeff(0) % (p * p) != 0;
}

/// Primes at which Eisenstein's criterion applies to h.
inline std::optional<Integer> eisenstein_prime(const IntPoly& h) {
  Integer g = 0;
  for (int i = 0; i < h.degree(); ++i) g = gcd(g, h.coeff(i));
  if (g == 0 || g == 1) return std::nullopt;
  std::vector<std::pair<Integer, unsigned>> fac;
  if (!factor_integer(g, fac)) {
    if (is_prime(g) && eisenstein_holds(h, g)) return g;
    return std::nullopt;
  }
  for (const auto& [p, e] : fac)
    if (eisenstein_holds(h, p)) return p;
  return std::nullopt;
}

inline std::vector<Integer> signed_search_points(std::size_t count, const IntPoly& g) {
  std::vector<Integer> pts;
  for (long long k = 0; pts.size() < count && k < 1000; ++k) {
    const long long cand[2] = {k, -k};
    for (int s = 0; s < (k == 0 ? 1 : 2) && pts.size() < count; ++s)
      if (g(Integer(cand[s])) != 0) pts.emplace_back(cand[s]);
  }
  return pts;
}

/// Newton interpolation through (xs[i], ys[i]); succeeds only with integer
/// divided differences, which any integer polynomial produces.
inline std::optional<IntPoly> integer_interpolate(const std::vector<Integer>& xs,
                                                  std::vector<Integer> ys) {
  const std::size_t n = xs.size();
  std::vector<Integer> dd(n);
  for (std::size_t k = 0; k < n; ++k) {
    dd[k] = ys[k];
    for (std::size_t j = k + 1; j < n; ++j) {
      const Integer num = ys[j] - ys[k];
      const Integer den = xs[j] - xs[k];
      if (num % den != 0) return std::nullopt;
      ys[j] = num / den;
    }
  }
  IntPoly r = IntPoly::constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) r = r * IntPoly::linear(xs[k]) + IntPoly::constant(dd[k]);
  return r;
}

/// Searches for a factor of degree d in [1, deg/2] by evaluation at small
/// points. Sets `factor` when one is found; returns false when the candidate
/// budget would be exceeded.
inline bool exhaustive_factor_search(const IntPoly& g, std::size_t budget,
                                     std::optional<IntPoly>& factor) {
  factor.reset();
  const int n = g.degree();
  for (long long a = -20; a <= 20; ++a) {
    if (g(Integer(a)) == 0) {
      factor = IntPoly::linear(Integer(a));
      return true;
    }
  }
  for (int d = 1; d <= n / 2; ++d) {
    const auto xs = signed_search_points(static_cast<std::size_t>(d) + 1, g);
    if (xs.size() != static_cast<std::size_t>(d) + 1) return false;
    std::vector<std::vector<Integer>> choices;
    std::size_t total = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto ds = divisors(g(xs[i]));
      if (ds.empty()) return false;
      std::vector<Integer> opts;
      for (const auto& v : ds) {
        opts.push_back(v);
        if (i != 0) opts.push_back(-v);  // overall sign fixed by the first point
      }
      total *= opts.size();
      if (total > budget) return false;
      choices.push_back(std::move(opts));
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::vector<Integer> ys(choices.size());
      for (std::size_t i = 0; i < choices.size(); ++i) ys[i] = choices[i][idx[i]];
      if (auto h = integer_interpolate(xs, ys); h && h->degree() == d) {
        IntPoly q;
        if (divide_exact(g, *h, q)) {
          factor = *h;
          return true;
        }
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return true;
}

}  // namespace detail

/// Runs the certification ladder: degree one, rational-root exclusion
/// (degrees 2 and 3), Eisenstein on shifts, irreducibility modulo a small
/// prime, and finally a bounded exhaustive factor search.
/// Precondition: g primitive with deg >= 1.
inline CertifyResult certify_q_irreducible(const IntPoly& g, const CertifyOptions& opt = {}) {
  if (g.degree() < 1) throw InputError("certification needs a non-constant polynomial");
  CertifyResult res;
  auto certified = [&](CertMethod m, Integer p = 0, Integer c = 0) {
    res.status = CertifyResult::Status::Certified;
    res.certificate = {m, std::move(p), std::move(c)};
    return res;
  };
  auto reducible = [&](const IntPoly& factor) {
    IntPoly q;
    divide_exact(g, factor, q);
    res.status = CertifyResult::Status::Reducible;
    res.left = factor;
    res.right = q;
    return res;
  };

  const int n = g.degree();
  if (n == 1) return certified(CertMethod::Degree1);
  if (g.coeff(0) == 0) return reducible(IntPoly::x());

  if (n <= 3) {
    bool found = false;
    Integer u, v;
    if (detail::find_rational_root(g, found, u, v)) {
      if (found) return reducible(IntPoly(std::vector<Integer>{-u, v}));
      return certified(CertMethod::RationalRootExcluded);
    }
  }

  for (int k = 0; k <= opt.eisenstein_shift; ++k) {
    for (int c : {k, -k}) {
      if (k == 0 && c != 0) continue;
      if (c != 0 && n > static_cast<int>(opt.shift_degree_limit)) continue;
      const IntPoly h = c == 0 ? g : shift(g, Integer(c));
      if (auto p = detail::eisenstein_prime(h)) return certified(CertMethod::Eisenstein, *p, Integer(c));
      if (k == 0) break;
    }
  }

  if (n <= static_cast<int>(opt.modp_degree_limit)) {
    for (unsigned p : primes_up_to(opt.modp_prime_limit)) {
      if (g.leading() % p == 0) continue;
      const auto f = detail::to_fp(g, p);
      if (detail::fp_irreducible(f, p)) return certified(CertMethod::ModPIrreducible, Integer(p));
    }
  }

  std::optional<IntPoly> factor;
  if (detail::exhaustive_factor_search(g, opt.exhaustive_budget, factor)) {
    if (factor) return reducible(primitive_part(*factor));
    return certified(CertMethod::ExhaustiveSmallDegree);
  }
  return res;
}

/// Re-runs the check named by the certificate. Asserted certificates carry no
/// evidence and replay trivially.
inline bool replay(const IrredCertificate& cert, const IntPoly& g, const CertifyOptions& opt = {}) {
  switch (cert.method) {
    case CertMethod::Degree1:
      return g.degree() == 1;
    case CertMethod::RationalRootExcluded: {
      if (g.degree() < 2 || g.degree() > 3) return false;
      bool found = false;
      Integer u, v;
      return detail::find_rational_root(g, found, u, v) && !found;
    }
    case CertMethod::Eisenstein:
      return is_prime(cert.prime) && detail::eisenstein_holds(shift(g, cert.shift), cert.prime);
    case CertMethod::ModPIrreducible: {
      if (cert.prime > 1'000'000'000 || !is_prime(cert.prime)) return false;
      const auto p = static_cast<std::uint64_t>(cert.prime);
      if (g.leading() % p == 0) return false;
      return detail::fp_irreducible(detail::to_fp(g, p), p);
    }
    case CertMethod::ExhaustiveSmallDegree: {
      std::optional<IntPoly> factor;
      return detail::exhaustive_factor_search(g, opt.exhaustive_budget, factor) && !factor;
    }
    case CertMethod::Asserted:
      return true;
  }
  return false;
}

}  // namespace ivp
