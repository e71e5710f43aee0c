// Cross-module sweeps over generated elements and random inputs.
#include <gtest/gtest.h>

#include "generators.hpp"
#include "helpers.hpp"
#include "ivp/families.hpp"
#include "ivp/powfact.hpp"
#include "oracle.hpp"

using namespace ivp;
using testing_ivp::contains;

namespace {

void expect_sound(const FamilyInstance& inst) {
  SCOPED_TRACE(inst.family + " " + format_expression(inst.f));
  for (const auto& c : inst.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(is_member(inst.f));
  EXPECT_EQ(is_irreducible_intz(inst.f).verdict, IrredVerdict::Irreducible);
  if (inst.displayed) {
    EXPECT_EQ(inst.displayed->product(), inst.f.pow(inst.displayed_power));
    for (const auto& p : inst.displayed->parts) EXPECT_EQ(is_irreducible_intz(p).verdict, IrredVerdict::Irreducible);
    EXPECT_FALSE(essentially_same(*inst.displayed, trivial_factorization(inst.f, inst.displayed_power)));
  }
}

}  // namespace

TEST(GeneratorSoundness, Type1Sweep) {
  for (auto [p, n] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 2u}}) {
    for (unsigned distinct = 1; distinct <= n; ++distinct) {
      Type1Params prm;
      prm.p = p;
      prm.n = n;
      prm.distinct_roots = distinct;
      expect_sound(construct_type1(prm));
    }
  }
}

TEST(GeneratorSoundness, Type1cdSweep) {
  for (auto [p, n] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}}) {
    Type1cdParams prm;
    prm.p = p;
    prm.n = n;
    prm.distinct_roots = n;
    expect_sound(construct_type1_cd(prm));
  }
}

TEST(GeneratorSoundness, Type2Sweep) {
  for (auto [p, n, m] : {std::tuple{3u, 2u, 1u}, {3u, 3u, 1u}, {3u, 3u, 2u}, {5u, 2u, 1u}}) {
    Type2Params prm;
    prm.p = p;
    prm.n = n;
    prm.m = m;
    expect_sound(construct_type2(prm));
  }
}

TEST(GeneratorSoundness, OtherFamilies) {
  expect_sound(construct_mixed_q({}));
  expect_sound(construct_two_prime({}));
}

TEST(PowerProperty, CubesRespectLengthBoundAndContainTrivial) {
  int checked = 0;
  for (const auto& f : testing_ivp::random_irreducibles(401, 25, 3, false)) {
    const auto F = f.pow(3);
    if (F.slots() > 9) continue;
    ++checked;
    const auto facs = enumerate_factorizations(F);
    EXPECT_TRUE(contains(facs, trivial_factorization(f, 3))) << format_expression(F);
    for (const auto& fac : facs) {
      EXPECT_LE(fac.length(), 3 * f.slots());
      EXPECT_EQ(fac.product(), F);
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(PowerProperty, RepeatedRunsAgree) {
  for (const auto& f : testing_ivp::random_irreducibles(503, 10, 4, false)) {
    const auto F = f.pow(2);
    EXPECT_EQ(enumerate_factorizations(F), enumerate_factorizations(F));
  }
}

// An Irreducible verdict means no split of the numerator multiset into two
// nonempty halves whose fixed divisors multiply to a multiple of b.
TEST(IrreducibleProperty, NoSplitAfterIrreducibleVerdict) {
  for (const auto& f : testing_ivp::random_irreducibles(601, 80, 5, false)) {
    std::vector<IntPoly> slots;
    for (const auto& fac : f.factors())
      for (unsigned i = 0; i < fac.mult; ++i) slots.push_back(fac.poly);
    const std::size_t k = slots.size();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
      std::vector<IntPoly> a, b;
      for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1 ? a : b).push_back(slots[i]);
      const Integer prod = oracle::fixdiv(oracle::product(a)) * oracle::fixdiv(oracle::product(b));
      EXPECT_NE(prod % f.denom(), 0) << format_expression(f) << " mask " << mask;
    }
  }
}
