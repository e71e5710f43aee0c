#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ivp/error.hpp"

namespace ivp {

using Integer = boost::multiprecision::cpp_int;

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer ipow(Integer base, unsigned exp) {
  Integer r = 1;
  while (exp) {
    if (exp & 1U) r *= base;
    exp >>= 1U;
    if (exp) base *= base;
  }
  return r;
}

/// Non-negative residue of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer powmod(Integer base, Integer exp, const Integer& m) {
  Integer r = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (boost::multiprecision::bit_test(exp, 0)) r = (r * base) % m;
    exp >>= 1;
    if (exp > 0) base = (base * base) % m;
  }
  return r;
}

/// p-adic valuation of a nonzero integer.
inline unsigned valuation(Integer a, unsigned p) {
  if (a == 0) throw InputError("valuation of zero is infinite");
  unsigned v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

/// Valuation capped at `cap`; zero counts as `cap`.
inline unsigned valuation_capped(Integer a, unsigned p, unsigned cap) {
  if (a == 0) return cap;
  unsigned v = 0;
  while (v < cap && a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline std::vector<unsigned> primes_up_to(unsigned n) {
  std::vector<unsigned> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (unsigned i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

/// Miller-Rabin with the first twelve prime bases: deterministic below 3.3e24,
/// probabilistic (error < 4^-12) above.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static constexpr unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : small) {
    Integer x = powmod(Integer(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// Prime factorization by trial division up to `limit`; the cofactor is kept
/// only if it is prime. Returns false when an unfactored composite remains.
inline bool factor_integer(Integer n, std::vector<std::pair<Integer, unsigned>>& out,
                           std::uint64_t limit = 1'000'000) {
  out.clear();
  n = abs(n);
  if (n == 0) return false;
  for (std::uint64_t p = 2; p <= limit && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(Integer(p), e);
    }
  }
  if (n == 1) return true;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return true;
  }
  return false;
}

/// Positive divisors of |n|, ascending; empty when factoring fails or the
/// divisor count exceeds `max_count`.
inline std::vector<Integer> divisors(const Integer& n, std::size_t max_count = 4096) {
  std::vector<std::pair<Integer, unsigned>> fac;
  if (!factor_integer(n, fac)) return {};
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : fac) {
    const std::size_t base = ds.size();
    if (base * (e + 1) > max_count) return {};
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline bool fits_u64(const Integer& a) {
  return a >= 0 && a <= Integer(std::numeric_limits<std::uint64_t>::max());
}

}  // namespace ivp
