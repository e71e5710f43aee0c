// Production enumerator versus the brute-force oracle on the regression corpus
// and on random members of Int(Z).
#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "ivp/powfact.hpp"
#include "oracle.hpp"

using namespace ivp;

namespace {

constexpr unsigned kOracleSlots = 8;

std::set<std::string> production(const FactoredIVP& F) {
  std::set<std::string> out;
  for (const auto& fac : enumerate_factorizations(F)) out.insert(oracle::key_of(fac.parts));
  return out;
}

}  // namespace

TEST(OracleEquivalence, Corpus) {
  const auto corpus = testing_ivp::load_corpus(IVP_TEST_DATA "/corpus.txt");
  ASSERT_GE(corpus.size(), 50u);
  int compared = 0;
  for (const auto& line : corpus) {
    const auto F = parse_expression(line);
    if (F.slots() > kOracleSlots) continue;
    ++compared;
    EXPECT_EQ(production(F), oracle::factorizations(F)) << line;
  }
  EXPECT_GE(compared, 50);
}

// Members with b = fixdiv that need not be powers of an irreducible element.
TEST(OracleEquivalence, RandomMembers) {
  std::mt19937_64 rng(7331);
  const std::vector<IntPoly> pool{IntPoly::x(),     IntPoly{-1, 1},   IntPoly{-2, 1},   IntPoly{-3, 1},
                                  IntPoly{-4, 1},   IntPoly{3, 0, 1}, IntPoly{4, 0, 1}, IntPoly{1, 1, 1},
                                  IntPoly{-17, 0, 0, 1}};
  for (int it = 0; it < 120; ++it) {
    std::vector<IntPoly> raw;
    const unsigned k = 2 + static_cast<unsigned>(rng() % 5);
    for (unsigned i = 0; i < k; ++i) raw.push_back(pool[rng() % pool.size()]);
    const auto F = canonicalize(1, oracle::fixdiv(oracle::product(raw)), raw);
    EXPECT_EQ(production(F), oracle::factorizations(F)) << format_expression(F);
  }
}
