#include <boxqp/arrangement.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace boxqp;

namespace {

SignVector signs_at(const Matrix<Rational>& G, const Vector<Rational>& y) {
  SignVector s(G.cols());
  for (std::size_t j = 0; j < G.cols(); ++j) s.set(j, sgn(detail::column_dot(G, j, std::span<const Rational>(y))));
  return s;
}

std::set<std::string> sign_strings(const std::vector<Cell<Rational>>& cells) {
  std::set<std::string> out;
  for (const auto& c : cells) out.insert(c.sigma.to_string());
  return out;
}

Matrix<Rational> random_g(std::mt19937& rng, std::size_t d, std::size_t n, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  Matrix<Rational> G(d, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) G(i, j) = dist(rng);
  return G;
}

bool next_signs(SignVector& s) {
  for (std::size_t i = s.size(); i-- > 0;) {
    if (s[i] < 1) {
      s.set(i, s[i] + 1);
      return true;
    }
    s.set(i, -1);
  }
  return false;
}

}  // namespace

TEST(SignVector, OrderAndMirror) {
  EXPECT_LT((SignVector{1, 0}), (SignVector{0, 1}));
  EXPECT_LT((SignVector{0, 1}), (SignVector{-1, -1}));
  EXPECT_LT((SignVector{0, 0}), (SignVector{0, -1}));
  EXPECT_EQ(mirror(SignVector{1, 0, -1}), (SignVector{-1, 0, 1}));
  EXPECT_EQ((SignVector{1, 0, -1}).to_string(), "+0-");
}

TEST(Realizable, Examples) {
  const auto I = Matrix<Rational>::identity(2);
  const auto y = realizable(I, SignVector{1, -1});
  ASSERT_TRUE(y);
  EXPECT_EQ(signs_at(I, *y), (SignVector{1, -1}));

  const Matrix<Rational> coincident{{1, 2}, {0, 0}};
  EXPECT_FALSE(realizable(coincident, SignVector{1, -1}));

  const auto zero = realizable(I, SignVector{0, 0});
  ASSERT_TRUE(zero);
  EXPECT_EQ(*zero, (Vector<Rational>{0, 0}));
}

TEST(Realizable, WitnessHasMarginOne) {
  const Matrix<Rational> G{{1, 0, 1}, {0, 1, 1}};
  const SignVector sigma{1, -1, 0};
  const auto y = realizable(G, sigma);
  ASSERT_TRUE(y);
  EXPECT_GE(detail::column_dot(G, 0, std::span<const Rational>(*y)), Rational(1));
  EXPECT_LE(detail::column_dot(G, 1, std::span<const Rational>(*y)), Rational(-1));
  EXPECT_EQ(detail::column_dot(G, 2, std::span<const Rational>(*y)), Rational(0));
}

TEST(EnumerateCovectors, Examples) {
  EXPECT_EQ(enumerate_covectors(Matrix<Rational>::identity(2)).size(), 9u);
  EXPECT_EQ(enumerate_covectors(Matrix<Rational>{{1, 2}, {0, 0}}).size(), 3u);
  EXPECT_EQ(enumerate_covectors(Matrix<Rational>{{1, 0, 1}, {0, 1, 1}}).size(), 13u);
}

TEST(EnumerateCovectors, ZeroColumnsAndZeroMatrix) {
  const auto cells = enumerate_covectors(Matrix<Rational>{{1, 0}, {0, 0}});
  EXPECT_EQ(sign_strings(cells), (std::set<std::string>{"+0", "00", "-0"}));
  EXPECT_EQ(enumerate_covectors(Matrix<Rational>(2, 3)).size(), 1u);
}

TEST(EnumerateCovectors, GenericRankOneGivesFourNPlusOne) {
  for (std::size_t n : {2, 3, 5, 10, 25}) {
    Matrix<Rational> G(2, n);
    for (std::size_t j = 0; j < n; ++j) {
      G(0, j) = 1;
      G(1, j) = static_cast<long>(j);
    }
    EXPECT_EQ(enumerate_covectors(G).size(), 4 * n + 1) << "n=" << n;
  }
}

TEST(EnumerateCovectors, SingleLineInThePlane) {
  // two rays of the line share the sign 0, so only three covectors
  EXPECT_EQ(enumerate_covectors(Matrix<Rational>{{1}, {3}}).size(), 3u);
}

TEST(EnumerateCovectors, ParallelColumnsMerge) {
  // columns (1,1) and (2,2) are parallel: one line, 4(n-1)+1 cells
  Matrix<Rational> G{{1, 2, 1}, {1, 2, 0}};
  EXPECT_EQ(enumerate_covectors(G).size(), 9u);
}

TEST(EnumerateCovectors, WitnessesSortOrderAndSymmetry) {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 2 + trial % 3, n = 2 + trial % 5;
    const auto G = random_g(rng, d, n, 2);
    const auto cells = enumerate_covectors(G);
    const auto names = sign_strings(cells);
    EXPECT_EQ(names.size(), cells.size()) << "duplicates";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      EXPECT_EQ(signs_at(G, cells[i].witness), cells[i].sigma);
      if (i > 0) {
        EXPECT_TRUE(cells[i - 1].sigma < cells[i].sigma);
      }
      EXPECT_TRUE(names.count(mirror(cells[i].sigma).to_string()));
    }
  }
}

TEST(EnumerateCovectors, MatchesExhaustiveRealizabilityCheck) {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = 2 + trial % 3, n = 1 + trial % 6;
    auto G = random_g(rng, d, n, 2);
    if (trial % 4 == 0 && n > 1)  // force a repeated direction
      for (std::size_t i = 0; i < d; ++i) G(i, n - 1) = G(i, 0) * 2;
    const auto names = sign_strings(enumerate_covectors(G));
    std::set<std::string> expected;
    SignVector s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, -1);
    do {
      if (realizable(G, s)) expected.insert(s.to_string());
    } while (next_signs(s));
    EXPECT_EQ(names, expected) << "trial " << trial;
  }
}

TEST(EnumerateCovectors, ContainsEverySampledSignVector) {
  std::mt19937 rng(67);
  std::uniform_int_distribution<int> coord(-50, 50);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 2 + trial % 2, n = 3 + trial % 4;
    const auto G = random_g(rng, d, n, 3);
    const auto names = sign_strings(enumerate_covectors(G));
    for (int k = 0; k < 500; ++k) {
      Vector<Rational> y(d);
      for (auto& v : y) v = coord(rng);
      EXPECT_TRUE(names.count(signs_at(G, y).to_string()));
    }
  }
}

TEST(EnumerateCovectors, FloatModeMatchesExact) {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 3, n = 2 + trial % 5;
    const auto G = random_g(rng, d, n, 3);
    const auto exact = enumerate_covectors(G);
    const auto flt = enumerate_covectors(matrix_cast<double>(G));
    ASSERT_EQ(exact.size(), flt.size()) << "trial " << trial;
    for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_EQ(exact[i].sigma, flt[i].sigma);
  }
}

TEST(FaceDimension, RankOfZeroColumns) {
  const auto I = Matrix<Rational>::identity(2);
  EXPECT_EQ(face_dimension(I, SignVector{0, 0}), 2u);
  EXPECT_EQ(face_dimension(I, SignVector{1, 0}), 1u);
  EXPECT_EQ(face_dimension(I, SignVector{1, -1}), 0u);
}
