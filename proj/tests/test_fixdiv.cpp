#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "ivp/fixdiv.hpp"
#include "oracle.hpp"

using namespace ivp;
using testing_ivp::E;
using testing_ivp::random_poly;

namespace {
const IntPoly X = IntPoly::x();
IntPoly lin(long a) { return IntPoly::linear(Integer(a)); }
IntPoly xsq_plus(long c) { return IntPoly{c, 0, 1}; }
}  // namespace

TEST(FixedDivisor, Examples) {
  EXPECT_EQ(fixed_divisor(X * xsq_plus(3)), 2);
  EXPECT_EQ(fixed_divisor(X * lin(4) * xsq_plus(3)), 4);
  EXPECT_EQ(fixed_divisor(X * lin(1) * lin(2)), 6);
  EXPECT_EQ(fixed_divisor(X), 1);
  EXPECT_EQ(fixed_divisor(X * X * xsq_plus(3)), 4);
  EXPECT_EQ(fixed_divisor(lin(4) * lin(4) * xsq_plus(3)), 4);
  EXPECT_EQ(fixed_divisor(lin(1) * lin(1) * xsq_plus(4)), 4);
  EXPECT_EQ(fixed_divisor(lin(3) * lin(3) * xsq_plus(4)), 4);
}

TEST(FixedDivisor, ImagePrimitive) {
  EXPECT_TRUE(is_image_primitive(xsq_plus(3)));
  EXPECT_FALSE(is_image_primitive(X * xsq_plus(3)));
  EXPECT_TRUE(is_image_primitive(IntPoly{1}));
}

TEST(FixedDivisor, Membership) {
  EXPECT_TRUE(is_member(E("x*(x^2+3)/2")));
  EXPECT_FALSE(is_member(E("x*(x^2+3)/4")));
  EXPECT_TRUE(is_member(E("(x^4+x^3+8)*(x-3)")));
  EXPECT_TRUE(is_member(E("(x^3-17)*(x^3-19)")));
}

TEST(FixedDivisor, PrimeBoundCandidates) {
  EXPECT_EQ(prime_bound_candidates(IntPoly{1, 0, 0, 0, 1}), (std::vector<unsigned>{2, 3}));
  EXPECT_TRUE(prime_bound_candidates(lin(3)).empty());
  EXPECT_EQ(prime_bound_candidates(IntPoly::binomial(10, 3)), (std::vector<unsigned>{2, 3, 5, 7}));
}

TEST(FixedDivisor, FactoredProductDoesNotExpand) {
  // (x^8-17)^4 (x-4)^2 (x-8)^2 has fixdiv 16; degree 36.
  EXPECT_EQ(fixed_divisor(E("(x^8-17)^4*(x-4)^2*(x-8)^2/16")), 16);
  // Degree 12500 via one sparse factor.
  const IntPoly h = IntPoly::binomial(2500, 251);
  const IntPoly polys[2] = {h, lin(5)};
  const unsigned mults[2] = {1, 2};
  EXPECT_EQ(fixed_divisor_product(polys, mults), fixed_divisor_product(polys, mults));
}

TEST(ClassValuation, Examples) {
  EXPECT_EQ(class_valuation({IntPoly::binomial(3, 17), 3, 1, 2}), 2u);
  EXPECT_EQ(class_valuation({IntPoly{8, 0, 0, 1, 1}, 2, 1, 0}), 3u);
  for (unsigned p : {2u, 3u, 5u, 7u}) EXPECT_EQ(class_valuation({X, p, 1, 0}), 1u);
  EXPECT_EQ(class_valuation({xsq_plus(-17), 2, 1, 1}), 3u);
  EXPECT_EQ(oracle::class_min_scan(xsq_plus(-17), 2, 2, 1, 64), 3u);
}

TEST(ClassValuation, Errors) {
  EXPECT_THROW(class_valuation({X * X * X, 2, 4, 0}, 10), ResourceError);
  EXPECT_THROW(class_valuation({X, 4, 1, 0}), InputError);
  EXPECT_THROW(class_valuation({X, 3, 1, 5}), InputError);
  EXPECT_THROW(class_valuation({IntPoly{}, 3, 1, 0}), InputError);
}

TEST(ClassValuation, OnAllClasses) {
  EXPECT_EQ(valuation_of_fixdiv_on_classes(IntPoly::binomial(3, 17), 3), (std::vector<unsigned>{0, 0, 2}));
  EXPECT_EQ(valuation_of_fixdiv_on_classes(IntPoly::binomial(3, 17) * IntPoly::binomial(3, 19), 3),
            (std::vector<unsigned>{0, 2, 2}));
  EXPECT_EQ(valuation_of_fixdiv_on_classes(X, 3), (std::vector<unsigned>{1, 0, 0}));
}

TEST(Indispensable, Examples) {
  const std::vector<IntPoly> fam{X, lin(1), lin(2)};
  auto r = indispensable(fam, 1, 2);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, 1);
  EXPECT_TRUE(replay(r));
  EXPECT_FALSE(indispensable(fam, 0, 2).witness);
  EXPECT_FALSE(indispensable(fam, 2, 2).witness);
  r = indispensable({X}, 0, 5);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, 0);
  EXPECT_THROW(indispensable(fam, 3, 2), InputError);
  EXPECT_THROW(indispensable(fam, 0, 4), InputError);
}

TEST(FixedDivisorProperty, WindowIndependence) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 300; ++it) {
    IntPoly g{1};
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) g = g * random_poly(rng, 1 + static_cast<int>(rng() % 3), 9);
    const Integer d = fixed_divisor(g);
    for (long start : {-13L, 0L, 5L, 101L}) EXPECT_EQ(oracle::fixdiv(g, start), d) << to_string(g);
  }
}

TEST(FixedDivisorProperty, SuperMultiplicative) {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 300; ++it) {
    const IntPoly f = random_poly(rng, 1 + static_cast<int>(rng() % 4), 12);
    const IntPoly g = random_poly(rng, 1 + static_cast<int>(rng() % 4), 12);
    EXPECT_EQ(fixed_divisor(f * g) % (fixed_divisor(f) * fixed_divisor(g)), 0);
  }
}

TEST(FixedDivisorProperty, PrimeFactorsBoundedByDegree) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 300; ++it) {
    IntPoly g{1};
    for (int i = 0; i < 3; ++i) g = g * lin(static_cast<long>(rng() % 20));
    g = primitive_part(g * random_poly(rng, static_cast<int>(rng() % 3), 5));
    Integer d = fixed_divisor(g);
    for (unsigned p = 2; d > 1; ++p)
      while (d % p == 0) {
        EXPECT_LE(static_cast<int>(p), g.degree());
        d /= p;
      }
  }
}

TEST(FixedDivisorProperty, ClassMinimaGiveValuation) {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 150; ++it) {
    IntPoly g = lin(static_cast<long>(rng() % 30)) * random_poly(rng, 1 + static_cast<int>(rng() % 3), 8);
    if (rng() % 2) g = g * lin(static_cast<long>(rng() % 30));
    const Integer d = fixed_divisor(g);
    for (unsigned p : {2u, 3u, 5u}) {
      const auto cls = valuation_of_fixdiv_on_classes(g, p);
      EXPECT_EQ(*std::min_element(cls.begin(), cls.end()), valuation(d, p));
      for (unsigned t = 0; t < p; ++t)
        EXPECT_EQ(cls[t], oracle::class_min_scan(g, p, p, t, 2000)) << to_string(g) << " p=" << p << " t=" << t;
    }
  }
}

TEST(FixedDivisorProperty, ProductAgreesWithExpandedOracle) {
  std::mt19937_64 rng(31);
  const std::vector<IntPoly> pool{X,           lin(1),      lin(2),      lin(4),       lin(8),
                                  xsq_plus(3), xsq_plus(4), xsq_plus(7), IntPoly::binomial(3, 17),
                                  IntPoly::binomial(3, 19), IntPoly{8, 0, 0, 1, 1}};
  for (int it = 0; it < 300; ++it) {
    std::vector<IntPoly> polys;
    std::vector<unsigned> mults;
    IntPoly expanded{1};
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (rng() % 3) continue;
      polys.push_back(pool[i]);
      mults.push_back(1 + static_cast<unsigned>(rng() % 3));
      expanded = expanded * pow(pool[i], mults.back());
    }
    if (polys.empty()) continue;
    EXPECT_EQ(fixed_divisor_product(polys, mults), oracle::fixdiv(expanded)) << to_string(expanded);
  }
}

TEST(FixedDivisorProperty, ValuationProfileGivesEverySubproduct) {
  std::mt19937_64 rng(37);
  const std::vector<IntPoly> types{X, lin(4), xsq_plus(3), lin(2), IntPoly::binomial(3, 17)};
  for (unsigned p : {2u, 3u}) {
    SubproductValuations eng(types, {3, 3, 3, 2, 2}, {p});
    for (std::size_t idx = 0; idx < eng.size(); ++idx) {
      const auto c = eng.counts(idx);
      IntPoly g{1};
      bool any = false;
      for (std::size_t i = 0; i < c.size(); ++i) {
        g = g * pow(types[i], c[i]);
        any = any || c[i] > 0;
      }
      if (!any) continue;
      EXPECT_EQ(eng.valuations(idx)[0], valuation(oracle::fixdiv(g), p)) << to_string(g);
    }
  }
}

TEST(IndispensableProperty, OnePeriodMatchesWideScan) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 200; ++it) {
    std::vector<IntPoly> fam;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) fam.push_back(random_poly(rng, 1 + static_cast<int>(rng() % 2), 6));
    const unsigned p = std::vector<unsigned>{2, 3, 5, 7}[rng() % 4];
    const std::size_t idx = rng() % fam.size();
    const auto r = indispensable(fam, idx, p);
    EXPECT_TRUE(replay(r));
    bool exists = false;
    for (long z = -long(p * p); z <= long(p * p) && !exists; ++z) {
      bool ok = fam[idx](Integer(z)) % p == 0;
      for (std::size_t i = 0; ok && i < fam.size(); ++i)
        if (i != idx && fam[i](Integer(z)) % p == 0) ok = false;
      exists = ok;
    }
    EXPECT_EQ(r.witness.has_value(), exists);
  }
}
