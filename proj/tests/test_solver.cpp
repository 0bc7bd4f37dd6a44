#include <boxqp/oracle.hpp>
#include <boxqp/solver.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace boxqp;

namespace {

QpInstance<Rational> make(Matrix<Rational> Q, Vector<Rational> q, Vector<Rational> lo, Vector<Rational> hi) {
  return validate(QpInstance<Rational>{Q.rows(), std::move(Q), std::move(q), std::move(lo), std::move(hi)});
}

GeneratorOptions corpus_entry(std::uint64_t seed) {
  GeneratorOptions g;
  g.n = 1 + seed % 5;
  g.rank = std::min<std::size_t>(g.n, seed % 4);
  g.seed = seed;
  g.zero_linear = seed % 3 == 0;
  g.force_degenerate = seed % 7 == 0;
  return g;
}

}  // namespace

TEST(Solve, ProductOnSquare) {
  const auto sol = solve(make({{0, 1}, {0, 0}}, {0, 0}, {-1, -1}, {1, 1}));
  EXPECT_EQ(sol.f_star, Rational(1));
  EXPECT_EQ(std::abs(sol.x_star[0].get_d()), 1.0);
  EXPECT_EQ(sol.x_star[0], sol.x_star[1]);
  EXPECT_EQ(sol.stats.rank_used, 1u);
  EXPECT_FALSE(sol.stats.homogenized);
}

TEST(Solve, ConcaveWithLinearTerm) {
  const auto sol = solve(make({{-1, 0}, {0, 0}}, {0, 1}, {-1, -1}, {1, 1}));
  EXPECT_EQ(sol.f_star, Rational(1));
  EXPECT_EQ(sol.x_star, (Vector<Rational>{0, 1}));
  EXPECT_TRUE(sol.stats.homogenized);
}

TEST(Solve, IndefiniteDiagonal) {
  const auto sol = solve(make({{1, 0}, {0, -1}}, {0, 0}, {-1, -1}, {1, 1}));
  EXPECT_EQ(sol.f_star, Rational(1));
  EXPECT_EQ(sol.x_star[1], Rational(0));
  EXPECT_EQ(sol.x_star[0] * sol.x_star[0], Rational(1));
}

TEST(Solve, RankZeroReturnsLowerCorner) {
  const auto inst = make(Matrix<Rational>(3, 3), {0, 0, 0}, {-1, 0, 2}, {1, 1, 5});
  const auto sol = solve(inst);
  EXPECT_EQ(sol.f_star, Rational(0));
  EXPECT_EQ(sol.x_star, inst.lower);
  EXPECT_EQ(sol.stats.rank_used, 0u);
}

TEST(Solve, PurelyLinear) {
  const auto sol = solve(make({{0}}, {1}, {0}, {2}));
  EXPECT_EQ(sol.f_star, Rational(2));
  EXPECT_EQ(sol.x_star, (Vector<Rational>{2}));
}

TEST(Solve, SkewQuadraticWithMinimalRankIsRankZero) {
  SolverOptions opts;
  opts.use_minimal_rank = true;
  const auto sol = solve(make({{0, 1}, {-1, 0}}, {0, 0}, {-1, -1}, {1, 1}), opts);
  EXPECT_EQ(sol.f_star, Rational(0));
  EXPECT_TRUE(sol.stats.minimal_rank_applied);
  EXPECT_EQ(sol.stats.rank_used, 0u);
}

TEST(Solve, AgreesWithOracle) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto inst = generate_instance(corpus_entry(seed));
    EXPECT_EQ(solve(inst).f_star, brute_force_solve(inst).f_star) << "seed " << seed;
  }
}

TEST(Solve, OptimumIsFeasibleAndAttained) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = generate_instance(corpus_entry(seed));
    const auto sol = solve(inst);
    EXPECT_TRUE(within_bounds(inst, std::span<const Rational>(sol.x_star)));
    EXPECT_EQ(evaluate(inst, sol.x_star), sol.f_star);
  }
}

TEST(Solve, MinimalRankOptionKeepsOptimum) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = corpus_entry(seed);
    g.zero_linear = true;
    const auto inst = generate_instance(g);
    SolverOptions opts;
    opts.use_minimal_rank = true;
    const auto a = solve(inst), b = solve(inst, opts);
    EXPECT_EQ(a.f_star, b.f_star) << "seed " << seed;
    EXPECT_LE(b.stats.rank_used, a.stats.rank_used);
  }
}

TEST(Solve, ParallelIsBitIdentical) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = generate_instance(corpus_entry(seed));
    SolverOptions par;
    par.parallel_faces = true;
    par.threads = 3;
    EXPECT_TRUE(solve(inst).identical(solve(inst, par))) << "seed " << seed;
  }
}

TEST(Solve, FloatModeAgreesWithExact) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = generate_instance(corpus_entry(seed));
    const double exact = solve(inst).f_star.get_d();
    const double flt = solve(instance_cast<double>(inst)).f_star;
    EXPECT_NEAR(flt, exact, 1e-9 * std::max(1.0, std::abs(exact))) << "seed " << seed;
  }
}

TEST(Solve, MonotoneUnderBoxGrowth) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = generate_instance(corpus_entry(seed));
    auto wider = inst;
    for (std::size_t i = 0; i < inst.n; ++i) {
      wider.lower[i] -= Rational(static_cast<long>(seed % 2));
      wider.upper[i] += Rational(static_cast<long>(1 + i % 2)) / 2;
    }
    EXPECT_GE(solve(wider).f_star, solve(inst).f_star) << "seed " << seed;
  }
}

TEST(Solve, InvariantUnderSkewPerturbation) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = generate_instance(corpus_entry(seed));
    auto sym = inst;
    sym.Q = symmetric_part(inst.Q);
    EXPECT_EQ(solve(inst).f_star, solve(sym).f_star) << "seed " << seed;
  }
}

TEST(Solve, ExplicitPivotRulesAgree) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = generate_instance(corpus_entry(seed));
    SolverOptions bland, dantzig;
    bland.pivot = PivotRule::Bland;
    dantzig.pivot = PivotRule::Dantzig;
    EXPECT_EQ(solve(inst, bland).f_star, solve(inst, dantzig).f_star);
  }
}
