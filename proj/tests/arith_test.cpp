#include "kmut/arith.hpp"

#include <gtest/gtest.h>

#include <array>

using kmut::Integer;
using kmut::MultiDegree;

TEST(Binomial, SmallValues) {
  EXPECT_EQ(kmut::binomial(5, 2), 10);
  EXPECT_EQ(kmut::binomial(9, 4), 126);
  EXPECT_EQ(kmut::binomial(3, 0), 1);
  EXPECT_EQ(kmut::binomial(3, 5), 0);
}

TEST(Binomial, PolynomialExtension) {
  // C(-1, k) = (-1)^k, C(-2, 3) = -4.
  EXPECT_EQ(kmut::binomial(-1, 3), -1);
  EXPECT_EQ(kmut::binomial(-1, 4), 1);
  EXPECT_EQ(kmut::binomial(-2, 3), -4);
  EXPECT_EQ(kmut::binomial(7, -1), 0);
}

TEST(Binomial, Pascal) {
  for (int n = -8; n <= 12; ++n)
    for (int k = 1; k <= 8; ++k)
      EXPECT_EQ(kmut::binomial(n + 1, k), kmut::binomial(n, k) + kmut::binomial(n, k - 1)) << n << " " << k;
}

TEST(Binomial, LargeIsExact) {
  Integer c = kmut::binomial(200, 100);
  EXPECT_EQ(c.str(), "90548514656103281165404177077484163874504589675413336841320");
}

TEST(SymDim, Values) {
  EXPECT_EQ(kmut::sym_dim(2, 3), 6);
  EXPECT_EQ(kmut::sym_dim(0, 5), 1);
  EXPECT_EQ(kmut::sym_dim(-1, 5), 0);
  EXPECT_EQ(kmut::sym_dim(3, 1), 1);
  EXPECT_THROW(kmut::sym_dim(1, 0), std::invalid_argument);
}

TEST(ChiProj, KnownValues) {
  EXPECT_EQ(kmut::chi_proj(4, 1), 5);
  EXPECT_EQ(kmut::chi_proj(4, 2), 15);
  EXPECT_EQ(kmut::chi_proj(1, -1), 0);
  EXPECT_EQ(kmut::chi_proj(1, -3), -2);
  EXPECT_EQ(kmut::chi_proj(4, -5), 1);
  EXPECT_EQ(kmut::chi_proj(2, -3), 1);
  EXPECT_THROW(kmut::chi_proj(0, 1), std::invalid_argument);
}

TEST(ChiProj, AgreesWithHilbertPolynomial) {
  // chi(P^n, O(a)) = C(a + n, n) as a polynomial in a.
  for (int n = 1; n <= 6; ++n)
    for (int a = -12; a <= 12; ++a)
      EXPECT_EQ(kmut::chi_proj(n, a), kmut::binomial(a + n, n)) << "n=" << n << " a=" << a;
}

TEST(ChiProj, SerreDuality) {
  for (int n = 1; n <= 5; ++n)
    for (int a = -10; a <= 10; ++a)
      EXPECT_EQ(kmut::chi_proj(n, a), (n % 2 ? -1 : 1) * kmut::chi_proj(n, -a - n - 1));
}

TEST(ChiProjProduct, Kuenneth) {
  std::array<int, 2> dims{4, 1};
  EXPECT_EQ(kmut::chi_proj_product(dims, MultiDegree{1, 1}), 10);
  EXPECT_EQ(kmut::chi_proj_product(dims, MultiDegree{2, -1}), 0);
  EXPECT_THROW(kmut::chi_proj_product(dims, MultiDegree{1}), std::invalid_argument);
}

TEST(MultiDegree, Arithmetic) {
  MultiDegree a{2, 1}, b{-1, 3};
  EXPECT_EQ(a + b, (MultiDegree{1, 4}));
  EXPECT_EQ(a - b, (MultiDegree{3, -2}));
  EXPECT_EQ(-a, (MultiDegree{-2, -1}));
  EXPECT_EQ(3 * a, (MultiDegree{6, 3}));
  EXPECT_EQ(a.str(), "(2,1)");
  EXPECT_TRUE(MultiDegree(3).is_zero());
  EXPECT_THROW(a + MultiDegree{1}, std::invalid_argument);
}

TEST(RationalText, Formatting) {
  EXPECT_EQ(kmut::to_string(kmut::Rational(33, 2)), "33/2");
  EXPECT_EQ(kmut::to_string(kmut::Rational(-4, 2)), "-2");
}
