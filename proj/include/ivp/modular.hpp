#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ivp/integer.hpp"
#include "ivp/poly.hpp"

namespace ivp {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1U) r = mulmod(r, b, m);
    e >>= 1U;
    b = mulmod(b, b, m);
  }
  return r;
}

inline u64 reduce(const Integer& c, u64 m) {
  Integer r = c % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

}  // namespace detail

/// A polynomial reduced modulo a fixed word-sized modulus m < 2^63.
/// Sparse polynomials (binomials like x^t - q) are evaluated term by term
/// with fast exponentiation; dense ones by Horner's scheme.
class ReducedPoly {
 public:
  ReducedPoly(const IntPoly& p, std::uint64_t m) : m_(m) {
    dense_ = p.terms() * 64 > p.coeffs().size();
    if (dense_) {
      coeffs_.reserve(p.coeffs().size());
      for (const auto& c : p.coeffs()) coeffs_.push_back(detail::reduce(c, m));
    } else {
      for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        if (p.coeffs()[i] != 0) terms_.emplace_back(i, detail::reduce(p.coeffs()[i], m));
    }
  }

  std::uint64_t modulus() const { return m_; }

  std::uint64_t operator()(std::uint64_t r) const {
    r %= m_;
    if (dense_) {
      std::uint64_t acc = 0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = detail::mulmod(acc, r, m_) + *it;
        if (acc >= m_) acc -= m_;
      }
      return acc;
    }
    std::uint64_t acc = 0;
    for (const auto& [deg, c] : terms_) {
      acc += detail::mulmod(c, detail::powmod(r, deg, m_), m_);
      if (acc >= m_) acc -= m_;
    }
    return acc;
  }

 private:
  std::uint64_t m_;
  bool dense_ = true;
  std::vector<std::uint64_t> coeffs_;
  std::vector<std::pair<std::size_t, std::uint64_t>> terms_;
};

inline constexpr std::uint64_t kWordModulusLimit = std::uint64_t(1) << 62;

/// p(r) mod m for arbitrary-precision modulus.
inline Integer eval_mod(const IntPoly& p, const Integer& r, const Integer& m) {
  if (m < Integer(kWordModulusLimit)) {
    const auto mm = static_cast<std::uint64_t>(m);
    return Integer(ReducedPoly(p, mm)(detail::reduce(r, mm)));
  }
  const Integer rr = mod(r, m);
  if (p.terms() * 64 > p.coeffs().size()) {
    Integer acc = 0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = mod(acc * rr + *it, m);
    return acc;
  }
  Integer acc = 0;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    if (p.coeffs()[i] != 0) acc = mod(acc + p.coeffs()[i] * powmod(rr, Integer(i), m), m);
  return acc;
}

/// min(v_p(g(r)), K), computed modulo p^K.
inline unsigned capped_valuation_at(const IntPoly& g, const Integer& r, unsigned p, unsigned K) {
  const Integer m = ipow(Integer(p), K);
  return valuation_capped(eval_mod(g, r, m), p, K);
}

}  // namespace ivp
