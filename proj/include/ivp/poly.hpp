#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ivp/integer.hpp"

namespace ivp {

/// Dense univariate polynomial over Z; coeffs[i] is the coefficient of x^i.
/// The highest stored coefficient is nonzero unless the polynomial is zero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<long long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static IntPoly constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }
  static IntPoly x() { return IntPoly{0, 1}; }
  /// x^k - c
  static IntPoly binomial(unsigned k, const Integer& c) {
    std::vector<Integer> v(k + 1);
    v[0] = -c;
    v[k] += 1;
    return IntPoly(std::move(v));
  }
  /// x - a
  static IntPoly linear(const Integer& a) { return IntPoly(std::vector<Integer>{-a, Integer(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  const Integer& leading() const { return coeffs_.back(); }

  Integer operator()(const Integer& a) const {
    Integer r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * a + *it;
    return r;
  }

  friend IntPoly operator+(const IntPoly& p, const IntPoly& q) {
    std::vector<Integer> v(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) v[i] += p.coeffs_[i];
    for (std::size_t i = 0; i < q.coeffs_.size(); ++i) v[i] += q.coeffs_[i];
    return IntPoly(std::move(v));
  }
  friend IntPoly operator-(const IntPoly& p) {
    std::vector<Integer> v(p.coeffs_);
    for (auto& c : v) c = -c;
    return IntPoly(std::move(v));
  }
  friend IntPoly operator-(const IntPoly& p, const IntPoly& q) { return p + (-q); }
  friend IntPoly operator*(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Integer> v(p.coeffs_.size() + q.coeffs_.size() - 1);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
      if (p.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) v[i + j] += p.coeffs_[i] * q.coeffs_[j];
    }
    return IntPoly(std::move(v));
  }
  friend IntPoly operator*(const Integer& c, const IntPoly& p) { return IntPoly::constant(c) * p; }

  /// Exact division by a nonzero integer dividing every coefficient.
  IntPoly divided_by(const Integer& d) const {
    std::vector<Integer> v(coeffs_);
    for (auto& c : v) c /= d;
    return IntPoly(std::move(v));
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  /// Canonical order: degree first, then coefficients from the leading term down.
  friend std::strong_ordering operator<=>(const IntPoly& p, const IntPoly& q) {
    if (auto c = p.coeffs_.size() <=> q.coeffs_.size(); c != 0) return c;
    for (std::size_t i = p.coeffs_.size(); i-- > 0;) {
      if (p.coeffs_[i] < q.coeffs_[i]) return std::strong_ordering::less;
      if (p.coeffs_[i] > q.coeffs_[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  /// Number of nonzero coefficients.
  std::size_t terms() const {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; }));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Integer> coeffs_;
};

inline Integer eval(const IntPoly& p, const Integer& a) { return p(a); }

inline IntPoly mul(const IntPoly& p, const IntPoly& q) { return p * q; }

inline IntPoly pow(const IntPoly& p, unsigned k) {
  IntPoly r = IntPoly::constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

/// gcd of the coefficients (positive).
inline Integer content(const IntPoly& p) {
  if (p.is_zero()) throw InputError("content of the zero polynomial");
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

/// Primitive part with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
  Integer c = content(p);
  if (p.leading() < 0) c = -c;
  return p.divided_by(c);
}

/// p(x + c), by Horner's scheme in the shifted variable.
inline IntPoly shift(const IntPoly& p, const Integer& c) {
  IntPoly r;
  const IntPoly lin(std::vector<Integer>{c, Integer(1)});
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    r = r * lin + IntPoly::constant(*it);
  return r;
}

/// Exact quotient p / d over Z; returns false if d does not divide p in Z[x].
inline bool divide_exact(const IntPoly& p, const IntPoly& d, IntPoly& quotient) {
  if (d.is_zero()) throw InputError("division by the zero polynomial");
  if (p.is_zero()) {
    quotient = {};
    return true;
  }
  if (p.degree() < d.degree()) return false;
  std::vector<Integer> rem(p.coeffs());
  std::vector<Integer> q(static_cast<std::size_t>(p.degree() - d.degree() + 1));
  const auto dd = static_cast<std::size_t>(d.degree());
  for (std::size_t i = q.size(); i-- > 0;) {
    const Integer& top = rem[i + dd];
    if (top % d.leading() != 0) return false;
    q[i] = top / d.leading();
    if (q[i] != 0)
      for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= q[i] * d.coeffs()[j];
  }
  for (const auto& c : rem)
    if (c != 0) return false;
  quotient = IntPoly(std::move(q));
  return true;
}

/// Human-readable form in x, e.g. "x^2-17", "3*x+1".
inline std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const Integer& c = p.coeffs()[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Integer mag = neg ? Integer(-c) : c;
    if (neg)
      s += '-';
    else if (!s.empty())
      s += '+';
    if (i == 0) {
      s += mag.str();
      continue;
    }
    if (mag != 1) s += mag.str() + "*";
    s += 'x';
    if (i > 1) s += '^' + std::to_string(i);
  }
  return s;
}

}  // namespace ivp
