#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"

using namespace kabreg;
using kabreg::testing::hf_oracle;
using kabreg::testing::p3;
using kabreg::testing::var;

namespace {

struct Vars {
  RingPtr r = p3();
  Polynomial x = var(r, 0), y = var(r, 1), z = var(r, 2), w = var(r, 3);
};

bool double_inclusion(const Ideal& a, const Ideal& b) { return is_subideal(a, b) && is_subideal(b, a); }

Polynomial random_form(const RingPtr& r, int d, std::mt19937_64& rng, int density = 3) {
  std::uniform_int_distribution<std::int64_t> coeff(1, 40);
  std::vector<std::pair<std::int64_t, Monomial>> pairs;
  for (const auto& m : monomials_of_degree(r->nvars(), d))
    if (rng() % density == 0) pairs.emplace_back(coeff(rng), m);
  if (pairs.empty()) pairs.emplace_back(1, monomials_of_degree(r->nvars(), d)[rng() % 4]);
  return Polynomial::from_pairs(r, pairs);
}

Ideal random_ideal(const RingPtr& r, std::mt19937_64& rng) {
  std::vector<Polynomial> gens;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < count; ++i) gens.push_back(random_form(r, 1 + static_cast<int>(rng() % 3), rng));
  return Ideal(r, gens);
}

}  // namespace

TEST(Buchberger, VariablesAreAlreadyABasis) {
  Vars v;
  const auto gb = buchberger({v.y, v.x});
  ASSERT_EQ(gb.size(), 2u);
  EXPECT_EQ(gb[0], v.x);
  EXPECT_EQ(gb[1], v.y);
}

TEST(Buchberger, PrincipalQuadric) {
  Vars v;
  const auto q = v.x * v.w - v.y * v.z;
  const auto gb = buchberger({q});
  ASSERT_EQ(gb.size(), 1u);
  EXPECT_EQ(gb[0], q.monic());
}

TEST(Buchberger, TwoConcurrentLinesIdeal) {
  Vars v;
  const auto gb = buchberger({v.y * v.z, v.x});
  ASSERT_EQ(gb.size(), 2u);
  // Sorted by descending leading monomial: yz before x.
  EXPECT_EQ(gb[0], v.y * v.z);
  EXPECT_EQ(gb[1], v.x);
  // The single S-pair reduces to zero.
  EXPECT_TRUE(reduce(s_polynomial(gb[0], gb[1]), gb).is_zero());
}

TEST(Buchberger, EmptyInputIsZeroIdeal) {
  EXPECT_TRUE(buchberger(std::vector<Polynomial>{}).empty());
}

TEST(Buchberger, UnitIdeal) {
  Vars v;
  const auto gb = buchberger({v.x, Polynomial::constant(v.r, 5)});
  ASSERT_EQ(gb.size(), 1u);
  EXPECT_TRUE(gb[0].is_constant());
}

TEST(Buchberger, ReducedAndMonic) {
  Vars v;
  const auto gb = buchberger({v.x * v.x - v.y * v.z, v.x * v.y - v.z * v.w, v.y * v.y - v.x * v.w});
  EXPECT_TRUE(is_groebner_basis(gb));
  for (std::size_t i = 0; i < gb.size(); ++i) {
    EXPECT_EQ(gb[i].leading_coefficient(), 1u);
    for (std::size_t j = 0; j < gb.size(); ++j)
      if (i != j)
        for (const auto& t : gb[i].terms()) EXPECT_FALSE(gb[j].leading_monomial().divides(t.monomial));
  }
}

TEST(Buchberger, UnderLexOrder) {
  Vars v;
  const auto gb = buchberger({v.x * v.w - v.y * v.z, v.x * v.x - v.y * v.y}, TermOrder::lex());
  ASSERT_FALSE(gb.empty());
  EXPECT_TRUE(gb.front().ring()->order() == TermOrder::lex());
  EXPECT_TRUE(is_groebner_basis(gb));
}

TEST(Ideal, RejectsInhomogeneousGenerators) {
  Vars v;
  EXPECT_THROW(Ideal(v.r, {v.x * v.x + v.y}), std::invalid_argument);
}

TEST(NormalForm, GeneratorReducesToZero) {
  Vars v;
  const Ideal I(v.r, {v.x, v.y * v.z});
  EXPECT_TRUE(normal_form(v.y * v.z, I).is_zero());
  EXPECT_TRUE(normal_form(v.x, I).is_zero());
}

TEST(NormalForm, OneIsReducedModuloProperIdeal) {
  Vars v;
  const Ideal I(v.r, {v.x, v.y * v.z});
  EXPECT_EQ(normal_form(Polynomial::constant(v.r, 1), I), Polynomial::constant(v.r, 1));
}

TEST(NormalForm, MultipleOfGenerator) {
  Vars v;
  const Ideal I(v.r, {v.x, v.y * v.z});
  EXPECT_TRUE(normal_form(v.y * v.z * v.w, I).is_zero());
  EXPECT_EQ(normal_form(v.x * v.w + v.z * v.w, I), v.z * v.w);
}

TEST(NormalForm, DifferenceLiesInIdeal) {
  Vars v;
  const Ideal I(v.r, {v.x * v.w - v.y * v.z, v.x * v.x});
  const auto f = v.x * v.x * v.w + v.y * v.y * v.z + v.x * v.y * v.w;
  const auto r = normal_form(f, I);
  EXPECT_TRUE(I.contains(f - r));
  for (const auto& t : r.terms())
    for (const auto& g : I.groebner_basis()) EXPECT_FALSE(g.leading_monomial().divides(t.monomial));
}

TEST(Intersect, ConcurrentLines) {
  Vars v;
  const Ideal I = intersect(Ideal(v.r, {v.x, v.y}), Ideal(v.r, {v.x, v.z}));
  EXPECT_TRUE(double_inclusion(I, Ideal(v.r, {v.x, v.y * v.z})));
  EXPECT_TRUE(ideal_equal(I, Ideal(v.r, {v.x, v.y * v.z})));
}

TEST(Intersect, Idempotent) {
  Vars v;
  const Ideal I(v.r, {v.x * v.w - v.y * v.z, v.x * v.y});
  EXPECT_TRUE(ideal_equal(intersect(I, I), I));
}

TEST(Intersect, ResultIsHomogeneousInOriginalRing) {
  Vars v;
  const Ideal I = intersect(Ideal(v.r, {v.x, v.y}), Ideal(v.r, {v.z, v.w}));
  EXPECT_TRUE(same_ring(I.ring(), v.r));
  for (const auto& g : I.generators()) EXPECT_TRUE(g.is_homogeneous());
  // Two skew lines: xz, xw, yz, yw.
  EXPECT_TRUE(ideal_equal(I, Ideal(v.r, {v.x * v.z, v.x * v.w, v.y * v.z, v.y * v.w})));
}

TEST(Intersect, QuadricConfigurationContainsSegre) {
  // K_{2,2} on xw - yz: rulings [0:1], [1:1] each.
  Vars v;
  const std::vector<Ideal> lines{Ideal(v.r, {v.x, v.y}), Ideal(v.r, {v.x - v.z, v.y - v.w}),
                                 Ideal(v.r, {v.x, v.z}), Ideal(v.r, {v.x - v.y, v.z - v.w})};
  Ideal acc = lines[0];
  for (std::size_t i = 1; i < lines.size(); ++i) acc = intersect(acc, lines[i]);
  EXPECT_TRUE(normal_form(v.x * v.w - v.y * v.z, acc).is_zero());
  for (const auto& l : lines) EXPECT_TRUE(is_subideal(acc, l));
}

TEST(Intersect, WithZeroIdeal) {
  Vars v;
  EXPECT_TRUE(intersect(Ideal(v.r, {v.x}), Ideal(v.r, {})).is_zero());
}

TEST(Eliminate, ZeroStepsIsIdentity) {
  Vars v;
  const Ideal I(v.r, {v.x * v.y, v.z});
  EXPECT_TRUE(ideal_equal(eliminate(I, 0), I));
}

TEST(Eliminate, AllVariablesOfProperIdeal) {
  Vars v;
  EXPECT_TRUE(eliminate(Ideal(v.r, {v.x * v.y, v.z}), 4).is_zero());
}

TEST(Eliminate, AgreesWithIntersectionByDoubleInclusion) {
  // Weighted ring (t of weight 0), t*(x) + (1-t)*(y): eliminating t gives (xy).
  const PrimeField F;
  const RingPtr lifted = PolynomialRing::make(5, F, TermOrder::grevlex(), {0, 1, 1, 1, 1});
  const auto t = var(lifted, 0), x = var(lifted, 1), y = var(lifted, 2);
  const Ideal E = eliminate(Ideal(lifted, {t * x, (Polynomial::constant(lifted, 1) - t) * y}), 1);
  ASSERT_EQ(E.ring()->nvars(), 4u);
  const auto r = E.ring();
  EXPECT_TRUE(double_inclusion(E, Ideal(r, {var(r, 0) * var(r, 1)})));
}

TEST(IdealEqual, Examples) {
  Vars v;
  const Ideal I(v.r, {v.x, v.y * v.z});
  EXPECT_TRUE(ideal_equal(I, I));
  // Homogeneous version of trading a generator for its sum with another.
  const Ideal J(v.r, {v.x * v.w, v.y * v.z});
  EXPECT_TRUE(ideal_equal(J, Ideal(v.r, {v.x * v.w + v.y * v.z, v.y * v.z})));
  EXPECT_FALSE(ideal_equal(I, J));
  EXPECT_FALSE(ideal_equal(Ideal(v.r, {v.x, v.y}), Ideal(v.r, {v.x, v.z})));
}

TEST(HilbertFunction, MatchesLinearAlgebraOracle) {
  Vars v;
  const Ideal I(v.r, {v.x, v.y * v.z});
  for (int d = 0; d <= 6; ++d) EXPECT_EQ(hilbert_function(I, d), hf_oracle(I, d)) << d;
  // S/(x, yz) in degree d: 2d + 1 monomials in y, z, w avoiding yz for d >= 1.
  EXPECT_EQ(hilbert_function(I, 3), 7u);
}

TEST(GroebnerProperty, CriterionAndHilbertFunctionOnRandomIdeals) {
  std::mt19937_64 rng(21);
  const RingPtr r = p3();
  for (int trial = 0; trial < 40; ++trial) {
    const Ideal I = random_ideal(r, rng);
    const auto& gb = I.groebner_basis();
    for (std::size_t i = 0; i < gb.size(); ++i)
      for (std::size_t j = i + 1; j < gb.size(); ++j)
        ASSERT_TRUE(reduce(s_polynomial(gb[i], gb[j]), gb).is_zero()) << "trial " << trial;
    for (const auto& g : I.generators()) ASSERT_TRUE(I.contains(g));
    for (int d = 0; d <= 5; ++d) ASSERT_EQ(hilbert_function(I, d), hf_oracle(I, d)) << "trial " << trial;
  }
}

TEST(GroebnerProperty, StableUnderGeneratorPermutation) {
  std::mt19937_64 rng(23);
  const RingPtr r = p3();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polynomial> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(random_form(r, 1 + static_cast<int>(rng() % 2), rng));
    const auto reference = buchberger(gens);
    for (int k = 0; k < 4; ++k) {
      std::shuffle(gens.begin(), gens.end(), rng);
      std::vector<Polynomial> scaled;
      for (const auto& g : gens) scaled.push_back(g.scaled(r->field()(1 + static_cast<std::int64_t>(rng() % 100))));
      ASSERT_EQ(buchberger(scaled), reference);
    }
  }
}

TEST(GroebnerProperty, IntersectionHilbertAdditivity) {
  std::mt19937_64 rng(29);
  const RingPtr r = p3();
  for (int trial = 0; trial < 15; ++trial) {
    const Ideal I = random_ideal(r, rng), J = random_ideal(r, rng);
    const Ideal meet = intersect(I, J);
    ASSERT_TRUE(is_subideal(meet, I));
    ASSERT_TRUE(is_subideal(meet, J));
    const Ideal sum = ideal_sum(I, J);
    for (int d = 0; d <= 6; ++d) {
      // HF(S/(I∩J)) = HF(S/I) + HF(S/J) - HF(S/(I+J)), each by linear algebra.
      ASSERT_EQ(hf_oracle(meet, d) + hf_oracle(sum, d), hf_oracle(I, d) + hf_oracle(J, d)) << trial << " " << d;
    }
  }
}
