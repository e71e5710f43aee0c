#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ivp/error.hpp"
#include "ivp/factored.hpp"
#include "ivp/poly.hpp"

namespace ivp {

/// Syntax error with the byte offset where parsing stopped.
class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : InputError(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// An expression before canonicalization.
struct RawExpression {
  int sign = 1;
  Integer denom = 1;
  std::vector<IntPoly> factors;
};

namespace detail {

// expr    := ['-'] product ['/' natural]
// product := atom ('*' atom)*
// atom    := '(' poly ')' ['^' natural] | poly
// poly    := term (('+'|'-') term)*, first term optionally signed
// term    := natural ['*'] x ['^' natural] | x ['^' natural] | natural
// An unparenthesized poly extends across '+' and '-'.
class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : s_(text) {}

  RawExpression parse() {
    RawExpression out;
    skip();
    if (peek() == '-' && next_non_ws(pos_ + 1) == '(') {
      ++pos_;
      out.sign = -1;
    }
    while (true) {
      skip();
      if (peek() == '(') {
        ++pos_;
        IntPoly p = poly(true);
        skip();
        expect(')');
        unsigned k = 1;
        skip();
        if (peek() == '^') {
          ++pos_;
          k = small_natural();
        }
        for (unsigned i = 0; i < k; ++i) out.factors.push_back(p);
      } else {
        out.factors.push_back(poly(out.factors.empty() && out.sign == 1));
      }
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    skip();
    if (peek() == '/') {
      ++pos_;
      skip();
      out.denom = natural();
      if (out.denom == 0) fail("denominator must be positive");
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  char next_non_ws(std::size_t i) const {
    while (i < s_.size() && std::isspace(static_cast<unsigned char>(s_[i]))) ++i;
    return i < s_.size() ? s_[i] : '\0';
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Integer natural() {
    skip();
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  unsigned small_natural() {
    const std::size_t at = pos_;
    const Integer n = natural();
    if (n > 100000) {
      pos_ = at;
      fail("exponent too large");
    }
    return static_cast<unsigned>(n);
  }

  // x ['^' natural]; the 'x' is at pos_.
  unsigned x_power() {
    ++pos_;
    skip();
    if (peek() != '^') return 1;
    ++pos_;
    return small_natural();
  }

  IntPoly poly(bool allow_sign) {
    std::vector<Integer> coeffs;
    auto add = [&](unsigned deg, const Integer& c) {
      if (coeffs.size() <= deg) coeffs.resize(deg + 1);
      coeffs[deg] += c;
    };
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (first && !allow_sign) fail("unexpected sign");
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        break;
      }
      Integer c = 1;
      unsigned deg = 0;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c = natural();
        skip();
        if (peek() == 'x') {
          deg = x_power();
        } else if (peek() == '*' && next_non_ws(pos_ + 1) == 'x') {
          ++pos_;
          skip();
          deg = x_power();
        }
      } else if (peek() == 'x') {
        deg = x_power();
      } else {
        fail("expected a term");
      }
      add(deg, sign * c);
      first = false;
      skip();
      if (peek() != '+' && peek() != '-') break;
    }
    return IntPoly(std::move(coeffs));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RawExpression parse_raw_expression(std::string_view text) { return detail::ExpressionParser(text).parse(); }

/// Parses and canonicalizes, certifying each factor irreducible over Q.
inline FactoredIVP parse_expression(std::string_view text, const CanonicalizeOptions& opt = {}) {
  const RawExpression raw = parse_raw_expression(text);
  return canonicalize(raw.sign, raw.denom, raw.factors, opt);
}

/// Printed form accepted back by parse_expression: the factor x bare,
/// others parenthesized, exponents for multiplicities, then "/b".
inline std::string format_expression(const FactoredIVP& f) {
  std::string s = f.sign() < 0 ? "-" : "";
  bool first = true;
  for (const auto& fac : f.factors()) {
    if (!first) s += '*';
    first = false;
    s += fac.poly == IntPoly::x() ? "x" : "(" + to_string(fac.poly) + ")";
    if (fac.mult > 1) s += "^" + std::to_string(fac.mult);
  }
  if (f.denom() != 1) s += "/" + f.denom().str();
  return s;
}

}  // namespace ivp
