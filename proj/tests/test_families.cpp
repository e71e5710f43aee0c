#include <gtest/gtest.h>

#include "generators.hpp"
#include "helpers.hpp"
#include "ivp/families.hpp"
#include "oracle.hpp"

using namespace ivp;
using testing_ivp::contains;
using testing_ivp::E;
using testing_ivp::parts;

namespace {

// Least prime > lower congruent to residue mod modulus, skipping `skip`.
Integer least_prime(long residue, long modulus, long lower, std::vector<Integer> skip = {}) {
  for (Integer x = ((residue % modulus) + modulus) % modulus;; x += modulus)
    if (x > lower && oracle::is_prime(x) && std::find(skip.begin(), skip.end(), x) == skip.end()) return x;
}

// Least values = residue mod modulus, coprime to every prime <= bound except p.
std::vector<Integer> least_roots(long residue, long modulus, unsigned p, long bound, std::size_t count) {
  std::vector<Integer> out;
  for (long a = residue; out.size() < count; a += modulus) {
    bool ok = true;
    for (long l = 2; l <= bound && ok; ++l)
      if (l != long(p) && oracle::is_prime(Integer(l)) && a % l == 0) ok = false;
    if (ok) out.push_back(Integer(a));
  }
  return out;
}

bool all_checks_pass(const FamilyInstance& inst) {
  for (const auto& c : inst.checks)
    if (!c.passed) return false;
  return !inst.checks.empty();
}

std::vector<unsigned> counts(const FactoredIVP& f, std::initializer_list<const char*> polys) {
  std::vector<unsigned> c(f.factors().size(), 0);
  for (const char* s : polys) c[detail::factor_index(f, testing_ivp::P(s))] += 1;
  return c;
}

}  // namespace

TEST(Type1, Example) {
  const auto inst = construct_type1({3, 2, 2, {}, {}});
  const Integer q = least_prime(1, 27, 8);
  EXPECT_EQ(q, 109);
  const auto roots = least_roots(3, 9, 3, 8, 2);
  EXPECT_EQ(roots, (std::vector<Integer>{3, 39}));
  const auto expect = canonicalize(1, 9, {IntPoly::binomial(6, q), IntPoly::linear(roots[0]), IntPoly::linear(roots[1])});
  EXPECT_EQ(inst.f, expect);
  EXPECT_EQ(format_expression(inst.f), "(x-39)*(x-3)*(x^6-109)/9");
  EXPECT_TRUE(all_checks_pass(inst));
  ASSERT_TRUE(inst.displayed);
  EXPECT_TRUE(is_factorization_of(*inst.displayed, inst.f.pow(2)));
  EXPECT_TRUE(essentially_same(*inst.displayed, parts({"(x-3)^2*(x^6-109)/9", "(x-39)^2*(x^6-109)/9"})));
}

TEST(Type1, EqualRoots) {
  const auto inst = construct_type1({3, 2, 1, {}, {}});
  EXPECT_EQ(inst.f.denom(), 9);
  EXPECT_EQ(inst.f.factors().size(), 2u);
  EXPECT_EQ(is_irreducible_intz(inst.f).verdict, IrredVerdict::Irreducible);
  EXPECT_FALSE(inst.displayed);
}

TEST(Type1, Errors) {
  EXPECT_THROW(construct_type1({2, 2, 2, {}, {}}), InputError);
  EXPECT_THROW(construct_type1({9, 2, 2, {}, {}}), InputError);
}

TEST(Type1, HomogeneousLengths) {
  const auto inst = construct_type1({3, 2, 2, {}, {}});
  for (unsigned k : {2u, 3u}) {
    const auto facs = enumerate_factorizations(inst.f.pow(k));
    EXPECT_GT(facs.size(), 1u);
    for (const auto& fac : facs) EXPECT_EQ(fac.length(), k);
  }
}

TEST(Type1cd, Examples) {
  auto inst = construct_type1_cd({3, 2, 2, {}});
  EXPECT_EQ(least_prime(1, 27, 8), 109);
  EXPECT_EQ(least_prime(-1, 27, 8), 53);
  const auto ps = inst.f.polys();
  EXPECT_NE(std::find(ps.begin(), ps.end(), IntPoly::binomial(3, 109)), ps.end());
  EXPECT_NE(std::find(ps.begin(), ps.end(), IntPoly::binomial(3, 53)), ps.end());
  EXPECT_TRUE(all_checks_pass(inst));

  inst = construct_type1_cd({5, 2, 2, {}});
  const Integer q = least_prime(1, 125, 22), r = least_prime(-1, 125, 22);
  const auto roots = least_roots(5, 25, 5, 22, 2);
  const auto expect = canonicalize(1, 25,
                                   {IntPoly::binomial(10, q), IntPoly::binomial(10, r), IntPoly::linear(roots[0]),
                                    IntPoly::linear(roots[1])});
  EXPECT_EQ(inst.f, expect);
  EXPECT_TRUE(all_checks_pass(inst));
  EXPECT_THROW(construct_type1_cd({2, 2, 2, {}}), InputError);
}

TEST(MixedQ, Example) {
  const auto inst = construct_mixed_q({5, 3, 6, {}});
  EXPECT_EQ(inst.f.denom(), 3 * 15625);
  unsigned linear = 0;
  for (const auto& fac : inst.f.factors())
    if (fac.poly.degree() == 1) linear += fac.mult;
  EXPECT_EQ(linear, 6u);
  EXPECT_TRUE(all_checks_pass(inst));
  EXPECT_THROW(construct_mixed_q({3, 3, 6, {}}), InputError);
  EXPECT_THROW(construct_mixed_q({5, 3, 5, {}}), InputError);
}

TEST(TwoPrime, Example) {
  const auto inst = construct_two_prime({5, 3, 2, 2, {}});
  const Integer r = least_prime(1, 125 * 27, 62);
  const auto ps = inst.f.polys();
  EXPECT_NE(std::find(ps.begin(), ps.end(), IntPoly::binomial(60, r)), ps.end());
  EXPECT_EQ(inst.f.denom(), 25 * 9);
  EXPECT_TRUE(all_checks_pass(inst));
  EXPECT_THROW(construct_two_prime({3, 5, 2, 2, {}}), InputError);
  EXPECT_THROW(construct_two_prime({5, 3, 2, 1, {}}), InputError);
}

TEST(Type2, Example) {
  const auto inst = construct_type2({3, 2, 1, 0, {}});
  EXPECT_EQ(format_expression(inst.f), "(x-3)*(x^3-109)*(x^3-53)/3");
  EXPECT_TRUE(all_checks_pass(inst));
  const auto w = find_nonabs_witness(inst.f, 2);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->power, 2u);
  EXPECT_THROW(construct_type2({3, 2, 2, 0, {}}), InputError);
}

TEST(Replacement, LinearInputs) {
  const std::vector<IntPoly> f{IntPoly::x(), IntPoly{-1, 1}};
  const auto r = replacement_polys(f, {2});
  ASSERT_EQ(r.replacements.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(r.replacements[i].degree(), 1);
    EXPECT_EQ(r.replacements[i].leading(), 1);
    EXPECT_EQ((r.replacements[i].coeff(0) - f[i].coeff(0)) % r.modulus, 0);
  }
  EXPECT_EQ(r.modulus % 2, 0);
  // Replay: every mix of originals and replacements keeps the fixed divisor.
  for (int mask = 1; mask < 9; ++mask) {
    std::vector<IntPoly> orig, mixed;
    for (int i = 0, c = mask; i < 2; ++i, c /= 3) {
      if (c % 3 == 0) continue;
      orig.push_back(f[i]);
      mixed.push_back(c % 3 == 1 ? f[i] : r.replacements[i]);
    }
    EXPECT_EQ(oracle::fixdiv(oracle::product(mixed)), oracle::fixdiv(oracle::product(orig)));
  }
  EXPECT_THROW(replacement_polys({}), InputError);
}

TEST(Overlap, FivePrime) {
  const auto o = construct_overlap(5);
  EXPECT_EQ(o.f.degree(), 18);
  EXPECT_EQ(o.e_single, (std::vector<unsigned>{0, 0, 0}));
  EXPECT_EQ(o.e_pair, (std::vector<unsigned>{2, 2, 2}));
  EXPECT_EQ(o.e_triple, 3u);
  const auto& G = o.replacement.replacements;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(valuation(oracle::fixdiv(G[i]), 5), 0u);
    EXPECT_EQ(valuation(oracle::fixdiv(G[i] * G[(i + 1) % 3]), 5), 2u);
  }
  EXPECT_EQ(valuation(oracle::fixdiv(G[0] * G[1] * G[2]), 5), 3u);
  EXPECT_TRUE(is_factorization_of(o.displayed, o.f.pow(2)));
  EXPECT_FALSE(essentially_same(o.displayed, trivial_factorization(o.f, 2)));
  const auto lengths = length_spectrum(o.f.pow(2));
  EXPECT_NE(std::find(lengths.begin(), lengths.end(), 2u), lengths.end());
  EXPECT_NE(std::find(lengths.begin(), lengths.end(), 3u), lengths.end());
  for (const auto& c : o.checks) EXPECT_TRUE(c.passed) << c.name;
  EXPECT_THROW(construct_overlap(3), InputError);
}

TEST(Overlap, ClassSplitLemmaOnPairs) {
  const auto o = construct_overlap(5);
  const auto& G = o.replacement.replacements;
  std::vector<unsigned> J(o.f.factors().size(), 0);
  J[detail::factor_index(o.f, G[0])] = 1;
  J[detail::factor_index(o.f, G[1])] = 1;
  const auto app = apply_lemma_type2i(o.f, J);
  EXPECT_EQ(app.power, 2u);
  EXPECT_TRUE(app.essentially_different);
  EXPECT_TRUE(is_factorization_of(app.factorization, o.f.pow(2)));
}

TEST(Pattern, Example) {
  const auto inst = construct_pattern({3, 2, 2, 2, 0, {}});
  const Integer q1 = least_prime(1, 27, 8), q2 = least_prime(1, 27, 8, {q1});
  const Integer r1 = least_prime(-1, 27, 8), r2 = least_prime(-1, 27, 8, {r1});
  EXPECT_EQ(inst.q, (std::vector<Integer>{q1, q2}));
  EXPECT_EQ(inst.r, (std::vector<Integer>{r1, r2}));
  EXPECT_EQ(q1, 109);
  EXPECT_EQ(r1, 53);

  const auto triples = enumerate_pattern_triples(inst);
  EXPECT_EQ(triples.size(), 8u);
  std::set<std::string> from_triples;
  for (const auto& t : triples) {
    const auto mB = t.triple.blocks.size();
    EXPECT_EQ(t.factorization.length(), 4 - mB);
    from_triples.insert(oracle::key_of(t.factorization.parts));
  }
  std::set<std::string> enumerated;
  for (const auto& f : enumerate_factorizations(inst.G)) enumerated.insert(oracle::key_of(f.parts));
  EXPECT_EQ(from_triples, enumerated);

  EXPECT_THROW(construct_pattern({3, 2, 1, 2, 0, {}}), InputError);
  auto bad = inst;
  bad.params.n = 0;
  EXPECT_THROW(enumerate_pattern_triples(bad), InputError);
}

TEST(Pattern, SetPartitionCounts) {
  // Bell numbers.
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52, 203};
  for (unsigned n = 1; n <= 6; ++n) {
    std::vector<std::vector<std::vector<unsigned>>> out;
    detail::set_partitions(n, out);
    EXPECT_EQ(out.size(), bell[n]);
  }
  std::vector<std::vector<unsigned>> inj;
  detail::injections(2, 4, inj);
  EXPECT_EQ(inj.size(), 12u);
}

TEST(Interchangeable, Examples) {
  auto f = E("(x-1)*(x-3)*(x^2+4)/4");
  auto pairs = find_interchangeable(f);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_TRUE(pairs[0].element_disjoint);
  std::set<std::vector<unsigned>> got{pairs[0].J1, pairs[0].J2};
  EXPECT_EQ(got, (std::set<std::vector<unsigned>>{counts(f, {"x-1"}), counts(f, {"x-3"})}));

  f = E("x*(x-4)*(x^2+3)/4");
  pairs = find_interchangeable(f);
  ASSERT_EQ(pairs.size(), 1u);
  got = {pairs[0].J1, pairs[0].J2};
  EXPECT_EQ(got, (std::set<std::vector<unsigned>>{counts(f, {"x"}), counts(f, {"x-4"})}));

  EXPECT_TRUE(find_interchangeable(E("x*(x^2+3)/2")).empty());
}

TEST(LemmaType1, Examples) {
  auto f = E("x*(x-4)*(x^2+3)/4");
  auto app = apply_lemma_type1(f, find_interchangeable(f)[0], 2);
  EXPECT_TRUE(essentially_same(app.factorization, parts({"x^2*(x^2+3)/4", "(x-4)^2*(x^2+3)/4"})));
  EXPECT_TRUE(app.essentially_different);

  f = E("(x-1)*(x-3)*(x^2+4)/4");
  const auto pair = find_interchangeable(f)[0];
  app = apply_lemma_type1(f, pair, 2);
  EXPECT_TRUE(essentially_same(app.factorization, parts({"(x-1)^2*(x^2+4)/4", "(x-3)^2*(x^2+4)/4"})));
  app = apply_lemma_type1(f, pair, 3);
  EXPECT_EQ(app.factorization.length(), 3u);
  EXPECT_TRUE(contains({app.factorization},
                       parts({"(x-1)^2*(x^2+4)/4", "(x-3)^2*(x^2+4)/4", "(x-1)*(x-3)*(x^2+4)/4"})));
  EXPECT_THROW(apply_lemma_type1(f, pair, 1), InputError);
}

TEST(LemmaType2, Examples) {
  auto f = E("(x-3)*(x^3-17)*(x^3-19)/3");
  auto app = apply_lemma_type2(f, counts(f, {"x^3-17", "x^3-19"}));
  EXPECT_EQ(app.power, 2u);
  EXPECT_TRUE(essentially_same(app.factorization, parts({"(x-3)^2*(x^3-17)*(x^3-19)/9", "x^3-17", "x^3-19"})));
  EXPECT_THROW(apply_lemma_type2(f, counts(f, {"x-3", "x^3-17", "x^3-19"})), InputError);

  const auto inst = construct_type2({3, 2, 1, 0, {}});
  f = inst.f;
  std::vector<unsigned> J(f.factors().size(), 0);
  for (std::size_t i = 0; i < J.size(); ++i) J[i] = f.factors()[i].poly.degree() > 1;
  app = apply_lemma_type2(f, J);
  EXPECT_TRUE(app.essentially_different);
  EXPECT_TRUE(is_factorization_of(app.factorization, f.pow(app.power)));
}

TEST(LemmaType2i, Example) {
  const auto f = E("(x^4+x^3+8)*(x-3)/4");
  const auto app = apply_lemma_type2i(f, counts(f, {"x^4+x^3+8"}));
  EXPECT_EQ(app.power, 2u);
  EXPECT_TRUE(essentially_same(app.factorization, parts({"(x^4+x^3+8)*(x-3)^2/8", "(x^4+x^3+8)/2"})));
  std::map<std::string, std::string> data(app.data.begin(), app.data.end());
  EXPECT_EQ(data["v_J[0 mod 2]"], "3");
  EXPECT_EQ(data["v_J[1 mod 2]"], "1");
  EXPECT_EQ(data["m"], "3");
  EXPECT_EQ(data["e"], "1");
  // J = {x-3}: no class exceeds n.
  EXPECT_THROW(apply_lemma_type2i(f, counts(f, {"x-3"})), HypothesisError);
}

// Interchange closure: element-disjoint pairs give factorizations the
// enumerator also finds.
TEST(FamiliesProperty, InterchangeClosure) {
  int applied = 0;
  for (const auto& f : testing_ivp::random_irreducibles(5, 300, 4, false)) {
    for (const auto& pair : find_interchangeable(f)) {
      if (!pair.element_disjoint) continue;
      const auto app = apply_lemma_type1(f, pair, 2);
      EXPECT_TRUE(contains(enumerate_factorizations(f.pow(2)), app.factorization)) << format_expression(f);
      ++applied;
    }
  }
  EXPECT_GE(applied, 5);
}

TEST(FamiliesProperty, PrimeDenominatorHasNoInterchangeablePairs) {
  for (const auto& f : testing_ivp::irreducibles_with_prime_denominator(65, 1000))
    ASSERT_TRUE(find_interchangeable(f).empty()) << format_expression(f);
}
