#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace kabreg;
using namespace kabreg::cohomology;
using kabreg::testing::ideal_dimension_in_degree;

namespace {

long binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(ProjectiveLine, Values) {
  EXPECT_EQ(h_p1(0, 3), 4);
  EXPECT_EQ(h_p1(1, 3), 0);
  EXPECT_EQ(h_p1(0, -1), 0);
  EXPECT_EQ(h_p1(1, -1), 0);
  EXPECT_EQ(h_p1(1, -4), 3);
  EXPECT_THROW((void)h_p1(2, 0), std::out_of_range);
}

TEST(ProjectiveLine, SerreDualityAndEuler) {
  for (long d = -10; d <= 10; ++d) {
    EXPECT_EQ(h_p1(1, d), h_p1(0, -2 - d));
    EXPECT_EQ(h_p1(0, d) - h_p1(1, d), d + 1);
  }
}

TEST(QuadricSurface, KunnethValues) {
  EXPECT_EQ(h_p1xp1(0, 1, 1), 4);
  EXPECT_EQ(h_p1xp1(1, -2, 0), 1);
  EXPECT_EQ(h_p1xp1(2, -2, -2), 1);
  EXPECT_EQ(h_p1xp1(1, 0, -3), 2);
}

TEST(QuadricSurface, SerreDualityGrid) {
  for (long p = -8; p <= 8; ++p)
    for (long q = -8; q <= 8; ++q) {
      for (int i = 0; i <= 2; ++i) ASSERT_EQ(h_p1xp1(i, p, q), h_p1xp1(2 - i, -2 - p, -2 - q)) << p << "," << q;
      ASSERT_EQ(h_p1xp1(0, p, q) - h_p1xp1(1, p, q) + h_p1xp1(2, p, q), (p + 1) * (q + 1));
      // Global sections are bihomogeneous forms.
      ASSERT_EQ(h_p1xp1(0, p, q), (p >= 0 && q >= 0) ? (p + 1) * (q + 1) : 0);
    }
}

TEST(ProjectiveSpace, Values) {
  EXPECT_EQ(h_p3(0, 2), 10);
  EXPECT_EQ(h_p3(3, -4), 1);
  EXPECT_EQ(h_p3(3, -5), 4);
  for (long m = -10; m <= 10; ++m) {
    EXPECT_EQ(h_p3(1, m), 0);
    EXPECT_EQ(h_p3(2, m), 0);
    EXPECT_EQ(h_p3(0, m), binom(m + 3, 3));
    EXPECT_EQ(h_p3(3, m), h_p3(0, -4 - m));
  }
}

TEST(IdealSheaf, RangeGuard) {
  EXPECT_THROW((void)h_ideal_sheaf(1, -2, 2, 3), FormulaRangeError);
  EXPECT_NO_THROW((void)h_ideal_sheaf(1, -1, 2, 3));
  EXPECT_THROW((void)h_ideal_sheaf(0, 2, 2, 3), std::out_of_range);
  EXPECT_THROW((void)h_ideal_sheaf(1, 2, 0, 3), std::invalid_argument);
}

TEST(IdealSheaf, EulerCharacteristicAndSectionsAgainstIdeal) {
  // chi(I_A(m)) = chi(O(m)) - [(a+b)(m+1) - ab], and h^0 is the degree-m part of the actual ideal.
  for (int a = 1; a <= 4; ++a)
    for (int b = a; b <= 5; ++b) {
      const Ideal I = defining_ideal(build_bipartite_on_quadric(a, b, PrimeField()));
      for (int m = -1; m <= a + b + 1; ++m) {
        const long chi = binom(m + 3, 3) - ((a + b) * (m + 1) - a * b);
        const long h0 = m < 0 ? 0 : static_cast<long>(ideal_dimension_in_degree(I.ring(), I.generators(), m));
        const long alt = h0 - h_ideal_sheaf(1, m, a, b) + h_ideal_sheaf(2, m, a, b) - h_ideal_sheaf(3, m, a, b);
        EXPECT_EQ(alt, chi) << a << "," << b << " m=" << m;
      }
    }
}

TEST(CohomologyOracle, ClosedForms) {
  for (int a = 1; a <= 50; ++a)
    for (int b = a; b <= 50; ++b) {
      ASSERT_EQ(reg_from_cohomology(a, b), std::max(a + 1, b)) << a << "," << b;
      ASSERT_EQ(acm_from_cohomology(a, b), b - a <= 1) << a << "," << b;
    }
}

TEST(CohomologyOracle, OrderedInputRequired) {
  EXPECT_THROW((void)reg_from_cohomology(3, 2), std::invalid_argument);
  EXPECT_THROW((void)acm_from_cohomology(0, 2), std::invalid_argument);
}

TEST(CohomologyOracle, Table) {
  const CohomologyTable t = ideal_sheaf_table(2, 4, -1, 6);
  EXPECT_EQ(t.at(1, 1), 0);
  // h^1(O(0, -2)) on the quadric surface.
  EXPECT_EQ(t.at(1, 2), 1);
  EXPECT_THROW((void)t.at(1, 7), std::out_of_range);
}
