#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace kabreg;
using kabreg::testing::p3;
using kabreg::testing::var;

TEST(Polynomial, ProductSimple) {
  const auto r = p3();
  const auto x = var(r, 0), y = var(r, 1), w = var(r, 3);
  EXPECT_EQ(poly_mul(x, w - y), x * w - x * y);
  EXPECT_EQ(poly_mul(x, w - y).size(), 2u);
}

TEST(Polynomial, ProductWithOne) {
  const auto r = p3();
  const auto f = var(r, 0) * var(r, 3) - var(r, 1) * var(r, 2);
  EXPECT_EQ(poly_mul(f, Polynomial::constant(r, 1)), f);
}

TEST(Polynomial, ProductOfRulingForms) {
  const auto r = p3();
  const auto x = var(r, 0), y = var(r, 1), z = var(r, 2);
  const std::int64_t s = 2, t = 3, u = 5, v = 7;
  const auto f = Polynomial::constant(r, t) * x - Polynomial::constant(r, s) * z;
  const auto g = Polynomial::constant(r, v) * x - Polynomial::constant(r, u) * y;
  const auto prod = poly_mul(f, g);
  // Distributed by hand: tv x^2 - tu xy - sv xz + su yz.
  const PrimeField F;
  EXPECT_EQ(prod.size(), 4u);
  EXPECT_EQ(prod.coefficient(Monomial{2, 0, 0, 0}), F(t * v));
  EXPECT_EQ(prod.coefficient(Monomial{1, 1, 0, 0}), F(-t * u));
  EXPECT_EQ(prod.coefficient(Monomial{1, 0, 1, 0}), F(-s * v));
  EXPECT_EQ(prod.coefficient(Monomial{0, 1, 1, 0}), F(s * u));
  EXPECT_EQ(prod.degree(), 2);
}

TEST(Polynomial, CancellationDropsTerms) {
  const auto r = p3();
  const auto x = var(r, 0), y = var(r, 1);
  EXPECT_TRUE(((x + y) - (y + x)).is_zero());
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
}

TEST(Polynomial, RingMismatchThrows) {
  const auto r = p3();
  const auto other = PolynomialRing::make(3, PrimeField());
  EXPECT_THROW((void)poly_mul(var(r, 0), var(other, 0)), std::invalid_argument);
}

TEST(Polynomial, InhomogeneousHasNoDegree) {
  const auto r = p3();
  const auto f = var(r, 0) * var(r, 0) + var(r, 1);
  EXPECT_FALSE(f.is_homogeneous());
  EXPECT_THROW((void)f.degree(), std::domain_error);
}

TEST(LeadingTerm, SegreQuadricUnderGrevlex) {
  // x > y > z > w: grevlex compares the last variable first, and xw has the larger w-exponent.
  const auto r = p3();
  const auto q = var(r, 0) * var(r, 3) - var(r, 1) * var(r, 2);
  EXPECT_EQ(leading_term(q, TermOrder::grevlex()).first, (Monomial{0, 1, 1, 0}));
}

TEST(LeadingTerm, SegreQuadricUnderLex) {
  const auto r = p3();
  const auto q = var(r, 0) * var(r, 3) - var(r, 1) * var(r, 2);
  const auto [m, c] = leading_term(q, TermOrder::lex());
  EXPECT_EQ(m, (Monomial{1, 0, 0, 1}));
  EXPECT_EQ(c, PrimeField()(1));
}

TEST(LeadingTerm, MonomialIsItsOwnLead) {
  const auto r = p3();
  const auto f = var(r, 1) * var(r, 1) * var(r, 2);
  EXPECT_EQ(leading_term(f, TermOrder::grevlex()).first, (Monomial{0, 2, 1, 0}));
}

TEST(LeadingTerm, LexLinear) {
  const auto r = p3();
  EXPECT_EQ(leading_term(var(r, 0) + var(r, 1), TermOrder::lex()).first, Monomial::variable(0));
}

TEST(LeadingTerm, ZeroThrows) {
  const auto r = p3();
  EXPECT_THROW((void)leading_term(Polynomial(r), TermOrder::grevlex()), std::domain_error);
}

TEST(TermOrder, BlockEliminationPrefersFirstBlock) {
  const auto order = TermOrder::block_elimination(1);
  // t * w^0 beats any monomial free of t, whatever its degree.
  EXPECT_GT(order.compare(Monomial{1, 0, 0, 0, 0}, Monomial{0, 5, 0, 0, 0}, 5), 0);
  EXPECT_GT(order.compare(Monomial{1, 1, 0, 0, 0}, Monomial{1, 0, 0, 0, 0}, 5), 0);
}

namespace {

Monomial random_monomial(std::mt19937_64& rng, std::size_t nvars, int maxexp) {
  std::uniform_int_distribution<int> e(0, maxexp);
  Monomial m;
  for (std::size_t i = 0; i < nvars; ++i) m.set(i, e(rng));
  return m;
}

}  // namespace

TEST(TermOrderProperty, TrichotomyAndMultiplicativity) {
  std::mt19937_64 rng(5);
  for (const auto& order : {TermOrder::grevlex(), TermOrder::lex(), TermOrder::block_elimination(1),
                            TermOrder::block_elimination(2)}) {
    for (int k = 0; k < 5000; ++k) {
      const auto u = random_monomial(rng, 5, 3), v = random_monomial(rng, 5, 3), w = random_monomial(rng, 5, 2);
      const int c = order.compare(u, v, 5);
      ASSERT_EQ(c == 0, u == v);
      ASSERT_EQ(c, -order.compare(v, u, 5));
      ASSERT_EQ(order.compare(u * w, v * w, 5), c);
      ASSERT_GE(order.compare(u * w, u, 5), 0);
    }
  }
}

TEST(TermOrderProperty, Transitivity) {
  std::mt19937_64 rng(9);
  for (const auto& order : {TermOrder::grevlex(), TermOrder::lex(), TermOrder::block_elimination(1)})
    for (int k = 0; k < 3000; ++k) {
      const auto a = random_monomial(rng, 4, 2), b = random_monomial(rng, 4, 2), c = random_monomial(rng, 4, 2);
      if (order.compare(a, b, 4) < 0 && order.compare(b, c, 4) < 0) ASSERT_LT(order.compare(a, c, 4), 0);
    }
}

TEST(PolynomialProperty, ProductOfHomogeneousIsHomogeneous) {
  const auto r = PolynomialRing::make(5, PrimeField());
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> coeff(-50, 50);
  auto random_form = [&](int d) {
    std::vector<std::pair<std::int64_t, Monomial>> pairs;
    for (const auto& m : monomials_of_degree(5, d))
      if (rng() % 3 == 0) pairs.emplace_back(coeff(rng), m);
    pairs.emplace_back(1, Monomial::variable(0, d));
    return Polynomial::from_pairs(r, pairs);
  };
  for (int k = 0; k < 100; ++k) {
    const int d1 = 1 + k % 3, d2 = 1 + (k / 3) % 3;
    const auto f = random_form(d1), g = random_form(d2);
    const auto fg = poly_mul(f, g);
    ASSERT_TRUE(fg.is_homogeneous());
    ASSERT_EQ(fg.degree(), d1 + d2);
    ASSERT_EQ(fg, poly_mul(g, f));
    // Terms stay strictly descending.
    for (std::size_t i = 1; i < fg.size(); ++i)
      ASSERT_GT(r->compare(fg.terms()[i - 1].monomial, fg.terms()[i].monomial), 0);
  }
}

TEST(PolynomialProperty, EvaluationIsARingMap) {
  const auto r = p3();
  const PrimeField F;
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> draw(0, F.modulus() - 1);
  const auto x = var(r, 0), y = var(r, 1), z = var(r, 2), w = var(r, 3);
  const auto f = x * w - y * z, g = x * x + Polynomial::constant(r, 3) * z * w;
  for (int k = 0; k < 100; ++k) {
    const std::vector<PrimeFieldScalar> pt{F(draw(rng)), F(draw(rng)), F(draw(rng)), F(draw(rng))};
    ASSERT_EQ((f * g).evaluate(pt), f.evaluate(pt) * g.evaluate(pt));
    ASSERT_EQ((f + g).evaluate(pt), f.evaluate(pt) + g.evaluate(pt));
  }
}
