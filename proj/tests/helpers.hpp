#pragma once

#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivp/expression.hpp"
#include "ivp/powfact.hpp"

namespace testing_ivp {

inline ivp::FactoredIVP E(const std::string& s) { return ivp::parse_expression(s); }

inline ivp::IntPoly P(const std::string& s) {
  const auto raw = ivp::parse_raw_expression(s);
  return raw.factors.size() == 1 ? raw.factors[0] : ivp::IntPoly{};
}

inline std::vector<std::string> printed(const ivp::Factorization& f) {
  std::vector<std::string> out;
  for (const auto& p : f.parts) out.push_back(ivp::format_expression(p));
  return out;
}

inline bool contains(const std::vector<ivp::Factorization>& facs, const ivp::Factorization& f) {
  for (const auto& g : facs)
    if (ivp::essentially_same(f, g)) return true;
  return false;
}

inline ivp::Factorization parts(std::initializer_list<const char*> exprs) {
  std::vector<ivp::FactoredIVP> v;
  for (const char* e : exprs) v.push_back(E(e));
  return ivp::make_factorization(std::move(v));
}

/// Random integer polynomial of exact degree `deg` with coefficients in [-c, c].
inline ivp::IntPoly random_poly(std::mt19937_64& rng, int deg, int c) {
  std::uniform_int_distribution<int> d(-c, c);
  std::vector<ivp::Integer> v(static_cast<std::size_t>(deg) + 1);
  for (auto& x : v) x = d(rng);
  while (v.back() == 0) v.back() = d(rng);
  return ivp::IntPoly(std::move(v));
}

/// Expressions from a corpus file, skipping blank lines and '#' comments.
inline std::vector<std::string> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace testing_ivp
