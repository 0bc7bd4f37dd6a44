#include <boxqp/oracle.hpp>

#include <gtest/gtest.h>

using namespace boxqp;

namespace {

QpInstance<Rational> x1x2() { return {2, Matrix<Rational>{{0, 1}, {0, 0}}, {0, 0}, {-1, -1}, {1, 1}}; }

}  // namespace

TEST(BruteForce, OneDimensional) {
  QpInstance<Rational> concave{1, Matrix<Rational>{{-1}}, {0}, {-1}, {1}};
  EXPECT_EQ(brute_force_solve(concave).f_star, Rational(0));
  QpInstance<Rational> convex{1, Matrix<Rational>{{1}}, {0}, {-1}, {1}};
  EXPECT_EQ(brute_force_solve(convex).f_star, Rational(1));
}

TEST(BruteForce, VisitsAllFaces) {
  const auto sol = brute_force_solve(x1x2());
  EXPECT_EQ(sol.f_star, Rational(1));
  EXPECT_EQ(sol.stats.faces_enumerated, 9u);
}

TEST(BruteForce, CapIsEnforced) {
  const auto inst = generate_instance({11, 1, 0});
  EXPECT_THROW(brute_force_solve(inst), OracleCapError);
  EXPECT_THROW(brute_force_solve(x1x2(), 1), OracleCapError);
}

TEST(BruteForce, OptimumIsAtLeastEveryVertex) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const auto inst = generate_instance({n, std::min<std::size_t>(n, seed % 3), seed});
    const auto best = brute_force_solve(inst).f_star;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Vector<Rational> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? inst.upper[i] : inst.lower[i];
      EXPECT_GE(best, evaluate(inst, x));
    }
  }
}

TEST(BruteForce, FloatMatchesExact) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const auto inst = generate_instance({n, std::min<std::size_t>(n, seed % 4), seed});
    EXPECT_NEAR(brute_force_solve(instance_cast<double>(inst)).f_star, brute_force_solve(inst).f_star.get_d(), 1e-9);
  }
}

TEST(StationarityCheck, ProductExamples) {
  const auto inst = x1x2();
  EXPECT_TRUE(stationarity_check(inst, Vector<Rational>{0, 0}));
  EXPECT_TRUE(stationarity_check(inst, Vector<Rational>{1, 1}));
  EXPECT_FALSE(stationarity_check(inst, Vector<Rational>{0, 1}));
  EXPECT_THROW(stationarity_check(inst, Vector<Rational>{2, 0}), std::invalid_argument);
}

TEST(StationarityCheck, OracleOptimumIsStationary) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const auto inst = generate_instance({n, std::min<std::size_t>(n, seed % 4), seed});
    EXPECT_TRUE(stationarity_check(inst, brute_force_solve(inst).x_star));
  }
}

TEST(Generator, RejectsImpossibleRank) {
  EXPECT_THROW(generate_instance({4, 5, 0}), std::invalid_argument);
  EXPECT_THROW(generate_instance({0, 0, 0}), std::invalid_argument);
}

TEST(Generator, ReproducibleAndExactRank) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorOptions g{6, seed % 4, seed};
    const auto a = generate_instance(g), b = generate_instance(g);
    EXPECT_EQ(a, b);
    EXPECT_EQ(rank(a.Q), g.rank);
    for (std::size_t i = 0; i < a.n; ++i) EXPECT_LE(a.lower[i], a.upper[i]);
  }
  EXPECT_NE(generate_instance({5, 2, 1}), generate_instance({5, 2, 2}));
}

TEST(Generator, OptionsAreHonoured) {
  GeneratorOptions g{5, 2, 9};
  g.zero_linear = true;
  g.force_degenerate = true;
  const auto inst = generate_instance(g);
  EXPECT_FALSE(inst.has_linear_term());
  bool pinned = false;
  for (std::size_t i = 0; i < inst.n; ++i) pinned |= inst.lower[i] == inst.upper[i];
  EXPECT_TRUE(pinned);
}
