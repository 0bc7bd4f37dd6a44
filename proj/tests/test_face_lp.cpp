#include <boxqp/face_lp.hpp>
#include <boxqp/factorize.hpp>
#include <boxqp/homogenize.hpp>
#include <boxqp/oracle.hpp>

#include <gtest/gtest.h>

using namespace boxqp;

namespace {

QpInstance<Rational> x1x2() { return {2, Matrix<Rational>{{0, 1}, {0, 0}}, {0, 0}, {-1, -1}, {1, 1}}; }

}  // namespace

TEST(BuildFaceSystem, Example) {
  const auto G = Matrix<Rational>::identity(2);
  const auto fs = build_face_system(G, Vector<Rational>{-1, -1}, Vector<Rational>{1, 1}, SignVector{0, 1});
  EXPECT_EQ(fs.free_idx, (std::vector<std::size_t>{0}));
  EXPECT_EQ(fs.fixed_idx, (std::vector<std::size_t>{1}));
  EXPECT_EQ(fs.A, (Matrix<Rational>{{0, 1}}));
  EXPECT_EQ(fs.b, (Vector<Rational>{0, 1}));
  EXPECT_EQ(fs.k(), 1u);
  EXPECT_EQ(fs.ell(), 1u);
}

TEST(BuildFaceSystem, FullFaceHasNoConstraints) {
  const auto G = Matrix<Rational>::identity(2);
  const auto fs = build_face_system(G, Vector<Rational>{-1, -1}, Vector<Rational>{1, 1}, SignVector{0, 0});
  EXPECT_EQ(fs.ell(), 0u);
  EXPECT_EQ(fs.b, (Vector<Rational>{0, 0}));
}

TEST(StationaryPoint, ProductExamples) {
  const auto inst = x1x2();
  const auto f = rank_factorize(inst.Q);
  auto face = [&](SignVector s) { return build_face_system(f.G, inst.lower, inst.upper, s); };

  const auto center = stationary_point(face({0, 0}), f.W);
  ASSERT_TRUE(center);
  EXPECT_EQ(*center, (Vector<Rational>{0, 0}));

  const auto vertex = stationary_point(face({1, 1}), f.W);
  ASSERT_TRUE(vertex);
  EXPECT_TRUE(vertex->empty());
  const auto cand = assemble_candidate(face({1, 1}), *vertex, inst, SignVector{1, 1});
  EXPECT_EQ(cand.x, (Vector<Rational>{1, 1}));
  EXPECT_EQ(cand.value, Rational(1));

  EXPECT_FALSE(stationary_point(face({0, 1}), f.W));
}

TEST(AssembleCandidate, RejectsOutOfBoxPoint) {
  const auto inst = x1x2();
  const auto f = rank_factorize(inst.Q);
  const auto fs = build_face_system(f.G, inst.lower, inst.upper, SignVector{0, 1});
  EXPECT_THROW(assemble_candidate(fs, Vector<Rational>{2}, inst, SignVector{0, 1}), std::out_of_range);
}

TEST(StationaryPoint, EveryVertexFaceIsFeasible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const auto h = hide_linear_term(generate_instance({n, 1 + seed % 3 > n ? n : 1 + seed % 3, seed}));
    const auto f = rank_factorize(h.inner.Q);
    for (const auto& cell : enumerate_covectors(f.G)) {
      if (cell.sigma.zeros() != 0) continue;
      EXPECT_TRUE(stationary_point(build_face_system(f.G, h.inner.lower, h.inner.upper, cell.sigma), f.W));
    }
  }
}

TEST(StationaryPoint, FeasibleFacesGiveStationaryPoints) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const auto h = hide_linear_term(generate_instance({n, std::min<std::size_t>(n, 1 + seed % 3), seed}));
    const auto f = rank_factorize(h.inner.Q);
    if (f.r == 0) continue;
    for (const auto& cell : enumerate_covectors(f.G)) {
      const auto fs = build_face_system(f.G, h.inner.lower, h.inner.upper, cell.sigma);
      const auto x = stationary_point(fs, f.W);
      if (!x) continue;
      const auto cand = assemble_candidate(fs, *x, h.inner, cell.sigma);
      EXPECT_TRUE(stationarity_check(h.inner, cand.x)) << "seed " << seed << " sigma " << cell.sigma.to_string();
      // the free coordinates have zero gradient, not only the interior ones
      for (auto i : fs.free_idx) {
        Rational g = 0;
        for (std::size_t j = 0; j < h.inner.n; ++j) g += (h.inner.Q(i, j) + h.inner.Q(j, i)) * cand.x[j];
        EXPECT_EQ(g, Rational(0));
      }
    }
  }
}

TEST(StationaryPoint, PivotRulesGiveSameObjective) {
  for (std::uint64_t seed = 200; seed < 215; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const auto h = hide_linear_term(generate_instance({n, std::min<std::size_t>(n, 1 + seed % 3), seed}));
    const auto f = rank_factorize(h.inner.Q);
    for (const auto& cell : enumerate_covectors(f.G)) {
      const auto fs = build_face_system(f.G, h.inner.lower, h.inner.upper, cell.sigma);
      const auto xb = stationary_point(fs, f.W, {PivotRule::Bland});
      const auto xd = stationary_point(fs, f.W, {PivotRule::Dantzig});
      ASSERT_EQ(xb.has_value(), xd.has_value());
      if (!xb) continue;
      EXPECT_EQ(assemble_candidate(fs, *xb, h.inner, cell.sigma).value,
                assemble_candidate(fs, *xd, h.inner, cell.sigma).value);
    }
  }
}
