#include <boxqp/matrix.hpp>
#include <boxqp/scalar.hpp>
#include <boxqp/surd.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace boxqp;

TEST(ParseRational, IntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-2.5e-1"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("1.5E2"), Rational(150));
}

TEST(ParseRational, RejectsGarbage) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
}

TEST(ScalarTraits, FloatZeroTestIsRelative) {
  EXPECT_TRUE(ScalarTraits<double>::is_zero(1e-8, 1e3, 1e-9));
  EXPECT_FALSE(ScalarTraits<double>::is_zero(1e-5, 1.0, 1e-9));
  EXPECT_TRUE(ScalarTraits<Rational>::is_zero(Rational(0), 1.0, 1e-9));
  EXPECT_FALSE(ScalarTraits<Rational>::is_zero(Rational(1, 1000000) * Rational(1, 1000000), 1.0, 1e-9));
}

TEST(Matrix, RankOfRankOneMatrix) {
  Matrix<Rational> m{{1, 2}, {2, 4}};
  EXPECT_EQ(rank(m), 1u);
  Matrix<double> d{{1, 2}, {2, 4}};
  EXPECT_EQ(rank(d), 1u);
}

TEST(Matrix, NullSpaceIsAnnihilated) {
  Matrix<Rational> m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  const auto N = null_space(m);
  ASSERT_EQ(N.cols(), 1u);
  const auto prod = m * N;
  EXPECT_TRUE(is_zero_matrix(prod));
}

TEST(Matrix, InverseRoundTrip) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<Rational> m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = d(rng);
    if (rank(m) < 4) {
      EXPECT_THROW(inverse(m), std::invalid_argument);
      continue;
    }
    EXPECT_EQ(m * inverse(m), Matrix<Rational>::identity(4));
  }
}

TEST(Matrix, RankAgreesBetweenScalarTypesOnIntegerMatrices) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + trial % 3;
    Matrix<Rational> a(5, r), b(r, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t k = 0; k < r; ++k) {
        a(i, k) = d(rng);
        b(k, i) = d(rng);
      }
    const auto m = a * b;
    EXPECT_EQ(rank(m), rank(matrix_cast<double>(m)));
    EXPECT_LE(rank(m), r);
  }
}

TEST(Surd, ArithmeticInQuadraticExtension) {
  auto basis = std::make_shared<SurdBasis>();
  auto [c, mask] = basis->adjoin_sqrt(Rational(2));
  QuadraticSurd s2(basis, c, mask);  // sqrt(2)
  EXPECT_FALSE(s2.is_rational());
  EXPECT_EQ(s2 * s2, QuadraticSurd(Rational(2)));
  const QuadraticSurd a = s2 + QuadraticSurd(Rational(1));
  EXPECT_EQ(a * a.inverse(), QuadraticSurd(Rational(1)));
  EXPECT_NEAR(a.to_double(), 1.0 + std::sqrt(2.0), 1e-12);
  EXPECT_THROW(QuadraticSurd(0).inverse(), std::domain_error);
}

TEST(Surd, PerfectSquaresNeedNoNewGenerator) {
  SurdBasis basis;
  auto [c, mask] = basis.adjoin_sqrt(Rational(9, 4));
  EXPECT_EQ(mask, 0u);
  EXPECT_EQ(c, Rational(3, 2));
  EXPECT_EQ(basis.size(), 0u);
  basis.adjoin_sqrt(Rational(2));
  auto [c8, mask8] = basis.adjoin_sqrt(Rational(8));  // sqrt 8 = 2 sqrt 2
  EXPECT_EQ(basis.size(), 1u);
  EXPECT_EQ(c8, Rational(2));
  EXPECT_EQ(mask8, 1u);
}
