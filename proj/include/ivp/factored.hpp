#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ivp/certify.hpp"
#include "ivp/error.hpp"
#include "ivp/poly.hpp"

namespace ivp {

/// One Q[x]-irreducible primitive factor with positive leading coefficient,
/// its multiplicity and the evidence for its irreducibility.
struct Factor {
  IntPoly poly;
  unsigned mult = 1;
  IrredCertificate cert;
};

/// sign * (1/denom) * prod poly_i^mult_i, the canonical form of a nonzero
/// rational polynomial whose integer part is a unit. Factors are kept sorted
/// by the IntPoly order with equal polynomials merged, so two values are equal
/// exactly when they denote the same polynomial.
class FactoredIVP {
 public:
  FactoredIVP() = default;

  /// Trusted constructor: factors must already be primitive, irreducible over
  /// Q and normalized to a positive leading coefficient.
  static FactoredIVP from_factors(int sign, Integer denom, std::vector<Factor> factors) {
    if (denom <= 0) throw InputError("denominator must be positive");
    if (sign != 1 && sign != -1) throw InputError("sign must be +1 or -1");
    FactoredIVP f;
    f.sign_ = sign;
    f.denom_ = std::move(denom);
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
    for (auto& fac : factors) {
      if (fac.mult == 0) continue;
      if (!f.factors_.empty() && f.factors_.back().poly == fac.poly)
        f.factors_.back().mult += fac.mult;
      else
        f.factors_.push_back(std::move(fac));
    }
    if (f.factors_.empty()) throw InputError("element must be a non-constant polynomial");
    return f;
  }

  int sign() const { return sign_; }
  const Integer& denom() const { return denom_; }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Number of irreducible factors counted with multiplicity.
  unsigned slots() const {
    unsigned s = 0;
    for (const auto& f : factors_) s += f.mult;
    return s;
  }

  int degree() const {
    int d = 0;
    for (const auto& f : factors_) d += f.poly.degree() * static_cast<int>(f.mult);
    return d;
  }

  std::vector<unsigned> multiplicities() const {
    std::vector<unsigned> m;
    for (const auto& f : factors_) m.push_back(f.mult);
    return m;
  }

  std::vector<IntPoly> polys() const {
    std::vector<IntPoly> v;
    for (const auto& f : factors_) v.push_back(f.poly);
    return v;
  }

  /// Expanded numerator prod poly_i^mult_i (without sign).
  IntPoly numerator() const {
    IntPoly r = IntPoly::constant(1);
    for (const auto& f : factors_) r = r * ivp::pow(f.poly, f.mult);
    return r;
  }

  FactoredIVP with_sign(int s) const {
    FactoredIVP r = *this;
    r.sign_ = s;
    return r;
  }

  /// Sub-product selected by a count vector over factors(), over denominator d.
  FactoredIVP select(const std::vector<unsigned>& counts, Integer d, int sign = 1) const {
    std::vector<Factor> fs;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (counts[i] > 0) fs.push_back({factors_[i].poly, counts[i], factors_[i].cert});
    return from_factors(sign, std::move(d), std::move(fs));
  }

  friend FactoredIVP operator*(const FactoredIVP& a, const FactoredIVP& b) {
    std::vector<Factor> fs = a.factors_;
    fs.insert(fs.end(), b.factors_.begin(), b.factors_.end());
    return from_factors(a.sign_ * b.sign_, a.denom_ * b.denom_, std::move(fs));
  }

  FactoredIVP pow(unsigned n) const {
    if (n == 0) throw InputError("zeroth power is a unit, not an element");
    FactoredIVP r = *this;
    for (auto& f : r.factors_) f.mult *= n;
    r.denom_ = ipow(denom_, n);
    r.sign_ = (n % 2 == 0) ? 1 : sign_;
    return r;
  }

  friend bool operator==(const FactoredIVP& a, const FactoredIVP& b) {
    if (a.sign_ != b.sign_ || a.denom_ != b.denom_ || a.factors_.size() != b.factors_.size())
      return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
      if (a.factors_[i].poly != b.factors_[i].poly || a.factors_[i].mult != b.factors_[i].mult)
        return false;
    return true;
  }

  /// Total order used for canonical sorting of factorization parts:
  /// degree, then the factor multiset, then denominator, then sign.
  friend std::strong_ordering operator<=>(const FactoredIVP& a, const FactoredIVP& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    const std::size_t n = std::min(a.factors_.size(), b.factors_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.factors_[i].poly <=> b.factors_[i].poly; c != 0) return c;
      if (auto c = a.factors_[i].mult <=> b.factors_[i].mult; c != 0) return c;
    }
    if (auto c = a.factors_.size() <=> b.factors_.size(); c != 0) return c;
    if (a.denom_ < b.denom_) return std::strong_ordering::less;
    if (a.denom_ > b.denom_) return std::strong_ordering::greater;
    return a.sign_ <=> b.sign_;
  }

 private:
  int sign_ = 1;
  Integer denom_ = 1;
  std::vector<Factor> factors_;
};

struct CanonicalizeOptions {
  CertifyOptions certify;
  /// Record Asserted instead of failing when no certificate is found.
  bool assert_irreducible = false;
  /// Receives one line per factor downgraded to Asserted.
  std::vector<std::string>* warnings = nullptr;
};

/// Brings sign * (1/denom) * prod raw into canonical form: factors become
/// primitive with positive leading coefficient, contents and signs fold into
/// the sign and denominator, the fraction is reduced, and each factor is
/// certified irreducible over Q. A monomial factor c*x^k is read as c times k
/// copies of x. Rejects zero factors, reducible factors (reporting the split),
/// and residual integer factors other than +-1.
inline FactoredIVP canonicalize(int sign, const Integer& denom, const std::vector<IntPoly>& raw,
                                const CanonicalizeOptions& opt = {}) {
  if (sign != 1 && sign != -1) throw InputError("sign must be +1 or -1");
  if (denom <= 0) throw InputError("denominator must be positive");
  Integer a = sign;
  std::vector<IntPoly> prims;
  for (const auto& p : raw) {
    if (p.is_zero()) throw InputError("zero factor");
    std::size_t low = 0;
    while (p.coeffs()[low] == 0) ++low;
    IntPoly rest = low == 0 ? p : IntPoly(std::vector<Integer>(p.coeffs().begin() + static_cast<long>(low), p.coeffs().end()));
    for (std::size_t i = 0; i < low; ++i) prims.push_back(IntPoly::x());
    if (rest.degree() == 0) {
      a *= rest.coeff(0);
      continue;
    }
    Integer c = content(rest);
    if (rest.leading() < 0) c = -c;
    a *= c;
    prims.push_back(rest.divided_by(c));
  }
  Integer b = denom;
  const Integer g = gcd(a, b);
  a /= g;
  b /= g;
  if (a != 1 && a != -1)
    throw InputError("integer factor " + a.str() + " remains after reduction; only units +-1 are supported");

  std::map<IntPoly, IrredCertificate> certs;
  std::vector<Factor> fs;
  for (auto& p : prims) {
    auto it = certs.find(p);
    if (it == certs.end()) {
      const auto res = certify_q_irreducible(p, opt.certify);
      if (res.status == CertifyResult::Status::Reducible)
        throw ReducibleFactorError("factor " + to_string(p) + " is reducible: (" + to_string(res.left) +
                                       ")*(" + to_string(res.right) + ")",
                                   to_string(res.left), to_string(res.right));
      IrredCertificate cert = res.certificate;
      if (res.status == CertifyResult::Status::Inconclusive) {
        if (!opt.assert_irreducible)
          throw InputError("could not certify " + to_string(p) +
                           " irreducible over Q; pass --assert-irreducible to accept it");
        cert = {CertMethod::Asserted, 0, 0};
        if (opt.warnings) opt.warnings->push_back("irreducibility of " + to_string(p) + " asserted, not certified");
      }
      it = certs.emplace(p, cert).first;
    }
    fs.push_back({p, 1, it->second});
  }
  return FactoredIVP::from_factors(a > 0 ? 1 : -1, b, std::move(fs));
}

/// Associated in Int(Z): the units are +-1, so equal up to the sign field.
inline bool associated_intz(const FactoredIVP& f, const FactoredIVP& g) {
  return f.with_sign(1) == g.with_sign(1);
}

}  // namespace ivp
