#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "ivp/irred.hpp"
#include "oracle.hpp"

using namespace ivp;
using testing_ivp::E;

namespace {

// Irreducibility from the definition, over the expanded slot list.
bool brute_irreducible(const FactoredIVP& f) {
  std::vector<IntPoly> slots;
  for (const auto& fac : f.factors())
    for (unsigned k = 0; k < fac.mult; ++k) slots.push_back(fac.poly);
  if (f.sign() != 1 && f.sign() != -1) return false;
  if (oracle::fixdiv(oracle::product(slots)) != f.denom()) return false;
  const std::size_t n = slots.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << n); ++mask) {
    std::vector<IntPoly> A, B;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? A : B).push_back(slots[i]);
    if ((oracle::fixdiv(oracle::product(A)) * oracle::fixdiv(oracle::product(B))) % f.denom() == 0) return false;
  }
  return true;
}

std::vector<FactoredIVP> random_elements(std::mt19937_64& rng, int count) {
  const std::vector<IntPoly> pool{IntPoly::x(),     IntPoly{-1, 1},   IntPoly{-2, 1},         IntPoly{-3, 1},
                                  IntPoly{-4, 1},   IntPoly{3, 0, 1}, IntPoly{4, 0, 1},       IntPoly{1, 1, 1},
                                  IntPoly{-17, 0, 0, 1}, IntPoly{-19, 0, 0, 1}, IntPoly{8, 0, 0, 1, 1}};
  std::vector<FactoredIVP> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<IntPoly> raw;
    const int k = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) raw.push_back(pool[rng() % pool.size()]);
    const Integer fd = oracle::fixdiv(oracle::product(raw));
    const auto ds = oracle::divisors(fd);
    out.push_back(canonicalize(1, ds[rng() % ds.size()], raw));
  }
  return out;
}

}  // namespace

TEST(IntZIrreducible, Examples) {
  EXPECT_EQ(is_irreducible_intz(E("x*(x^2+3)/2")).verdict, IrredVerdict::Irreducible);
  EXPECT_EQ(is_irreducible_intz(E("x^2*(x^2+3)/4")).verdict, IrredVerdict::Irreducible);
  EXPECT_EQ(is_irreducible_intz(E("(x-4)^2*(x^2+3)/4")).verdict, IrredVerdict::Irreducible);

  const auto r = is_irreducible_intz(E("(x^3-17)*(x^3-19)"));
  ASSERT_EQ(r.verdict, IrredVerdict::Reducible);
  ASSERT_TRUE(r.split);
  std::vector<std::string> halves{format_expression(r.split->first), format_expression(r.split->second)};
  std::sort(halves.begin(), halves.end());
  EXPECT_EQ(halves, (std::vector<std::string>{"(x^3-17)", "(x^3-19)"}));

  const auto nm = is_irreducible_intz(E("x*(x^2+3)/4"));
  EXPECT_EQ(nm.verdict, IrredVerdict::NotMember);
  EXPECT_EQ(nm.reason, "not a member (fixdiv = 2)");
}

TEST(IntZIrreducible, ConstantSplitWhenDenominatorTooSmall) {
  const auto r = is_irreducible_intz(E("x*(x^2+3)"));
  EXPECT_EQ(r.verdict, IrredVerdict::Reducible);
  ASSERT_TRUE(r.constant_split);
  EXPECT_EQ(*r.constant_split, 2);
}

TEST(IntZIrreducible, NegativeSignIsAUnit) {
  EXPECT_EQ(is_irreducible_intz(E("-(x)*(x^2+3)/2")).verdict, IrredVerdict::Irreducible);
}

TEST(IntZIrreducible, SlotCapGivesInconclusive) {
  const auto r = is_irreducible_intz(E("(x^3-17)^10*(x^3-19)^10/1"), {8, kDefaultMaxDepth});
  EXPECT_EQ(r.verdict, IrredVerdict::Inconclusive);
}

TEST(Associated, Examples) {
  const auto f = E("x*(x^2+3)/2");
  EXPECT_TRUE(associated_intz(f, f.with_sign(-1)));
  EXPECT_FALSE(associated_intz(E("x"), E("x-1")));
  EXPECT_FALSE(associated_intz(E("x^2*(x^2+3)/4"), E("(x-4)^2*(x^2+3)/4")));
}

TEST(IntZIrreducibleProperty, AgreesWithDefinition) {
  std::mt19937_64 rng(101);
  int irreducible = 0;
  for (const auto& f : random_elements(rng, 400)) {
    const auto r = is_irreducible_intz(f);
    const bool expect = brute_irreducible(f);
    EXPECT_EQ(r.verdict == IrredVerdict::Irreducible, expect) << format_expression(f);
    irreducible += expect;
  }
  EXPECT_GT(irreducible, 50);
}

TEST(IntZIrreducibleProperty, SplitsMultiplyBack) {
  std::mt19937_64 rng(103);
  int splits = 0;
  for (const auto& f : random_elements(rng, 400)) {
    const auto r = is_irreducible_intz(f);
    if (r.verdict != IrredVerdict::Reducible || !r.split) continue;
    ++splits;
    EXPECT_EQ(r.split->first * r.split->second, f);
    EXPECT_TRUE(is_member(r.split->first));
    EXPECT_TRUE(is_member(r.split->second));
  }
  EXPECT_GT(splits, 50);
}

TEST(IntZIrreducibleProperty, DenominatorOneCase) {
  std::mt19937_64 rng(107);
  for (const auto& f0 : random_elements(rng, 300)) {
    const auto f = FactoredIVP::from_factors(1, 1, f0.factors());
    const bool expect = f.factors().size() == 1 && f.factors()[0].mult == 1 && fixed_divisor(f) == 1;
    EXPECT_EQ(is_irreducible_intz(f).verdict == IrredVerdict::Irreducible, expect) << format_expression(f);
  }
}

TEST(IntZIrreducibleProperty, CertificatesReplay) {
  std::mt19937_64 rng(109);
  for (const auto& f : random_elements(rng, 100))
    for (const auto& fac : f.factors()) EXPECT_TRUE(replay(fac.cert, fac.poly)) << to_string(fac.poly);
}
