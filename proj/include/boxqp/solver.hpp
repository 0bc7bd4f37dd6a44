#pragma once

// End-to-end box-constrained quadratic maximization:
//   hide the linear term, factor Q = U^T V, enumerate the faces of the
//   zonotope G * box through the covectors of the arrangement of G's
//   columns, and keep the best stationary point found on any face.

#include <boxqp/arrangement.hpp>
#include <boxqp/face_lp.hpp>
#include <boxqp/factorize.hpp>
#include <boxqp/homogenize.hpp>
#include <boxqp/qp_model.hpp>

#include <atomic>
#include <chrono>
#include <optional>
#include <thread>
#include <vector>

namespace boxqp {

struct SolverOptions {
  bool use_minimal_rank = false;  // replace Q by a minimal-rank representer when q = 0
  bool parallel_faces = false;
  unsigned threads = 0;  // 0 = hardware concurrency (at least 2)
  Tolerances tol{};
  /// Pivot rule for the face LPs; unset picks Bland (exact) or Dantzig (float).
  std::optional<PivotRule> pivot;
};

struct SolveStats {
  std::size_t faces_enumerated = 0;
  std::size_t lps_solved = 0;
  std::size_t lps_feasible = 0;
  std::size_t enumeration_lps = 0;
  std::size_t rank_used = 0;
  bool homogenized = false;
  bool minimal_rank_applied = false;
  double wall_seconds = 0.0;

  /// Equality over the deterministic fields (wall time excluded).
  bool same_counts(const SolveStats& o) const {
    return faces_enumerated == o.faces_enumerated && lps_solved == o.lps_solved && lps_feasible == o.lps_feasible &&
           enumeration_lps == o.enumeration_lps && rank_used == o.rank_used && homogenized == o.homogenized &&
           minimal_rank_applied == o.minimal_rank_applied;
  }
};

template <class T>
struct Solution {
  T f_star;
  Vector<T> x_star;
  SolveStats stats;

  bool identical(const Solution& o) const {
    return f_star == o.f_star && x_star == o.x_star && stats.same_counts(o.stats);
  }
};

/// Constant objective (Q = 0, q = 0): every point is optimal.
template <class T>
Solution<T> handle_rank_zero(const QpInstance<T>& inst) {
  Solution<T> sol{T(0), inst.lower, {}};
  sol.stats.rank_used = 0;
  return sol;
}

namespace detail {

template <class T>
LpOptions face_lp_options(const SolverOptions& opts) {
  LpOptions lp;
  lp.tol = opts.tol.lp;
  lp.rule = opts.pivot.value_or(ScalarTraits<T>::exact ? PivotRule::Bland : PivotRule::Dantzig);
  return lp;
}

/// Q itself, or its minimal-rank representer when that lowers the rank and
/// stays in the scalar type.
template <class T>
std::optional<Matrix<T>> lower_rank_representer(const Matrix<T>& Q, const Tolerances& tol) {
  const auto rep = minimal_rank_matrix(Q, tol.rank);
  Matrix<T> candidate(Q.rows(), Q.cols());
  for (std::size_t i = 0; i < Q.rows(); ++i)
    for (std::size_t j = 0; j < Q.cols(); ++j) {
      if constexpr (ScalarTraits<T>::exact) {
        if (!rep(i, j).is_rational()) return std::nullopt;
        candidate(i, j) = rep(i, j).rational_part();
      } else {
        candidate(i, j) = rep(i, j);
      }
    }
  if (rank(candidate, tol.rank) >= rank(Q, tol.rank)) return std::nullopt;
  return candidate;
}

}  // namespace detail

template <class T>
Solution<T> solve(const QpInstance<T>& inst, const SolverOptions& opts = {}) {
  const auto started = std::chrono::steady_clock::now();
  auto finish = [&](Solution<T> sol) {
    sol.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return sol;
  };

  HomogenizedInstance<T> h = hide_linear_term(inst);
  QpInstance<T>& work = h.inner;
  bool min_rank_applied = false;
  if (opts.use_minimal_rank && !h.was_homogenized) {
    if (auto rep = detail::lower_rank_representer(work.Q, opts.tol)) {
      work.Q = std::move(*rep);
      min_rank_applied = true;
    }
  }

  const Factorization<T> fac = rank_factorize(work.Q, opts.tol.rank);
  if (fac.r == 0) {
    Solution<T> sol = handle_rank_zero(inst);
    sol.stats.minimal_rank_applied = min_rank_applied;
    return finish(std::move(sol));
  }

  ArrangementOptions aopts{opts.tol, LpOptions{PivotRule::Bland, opts.tol.lp}};
  ArrangementStats astats;
  const std::vector<Cell<T>> cells = enumerate_covectors(fac.G, aopts, &astats);
  const LpOptions lp = detail::face_lp_options<T>(opts);

  // Each face is independent; results are kept per enumeration index so the
  // reduction below is the same whether or not the loop ran in parallel.
  std::vector<std::optional<Vector<T>>> found(cells.size());
  auto handle_face = [&](std::size_t idx) {
    const auto& sigma = cells[idx].sigma;
    const FaceSystem<T> fs = build_face_system(fac.G, work.lower, work.upper, sigma, opts.tol.rank);
    if (auto x_free = stationary_point(fs, fac.W, lp)) {
      auto cand = assemble_candidate(fs, *x_free, work, sigma);
      found[idx] = project_solution(h, cand.x, opts.tol.lp);
    }
  };

  if (opts.parallel_faces) {
    unsigned threads = opts.threads ? opts.threads : std::max(2u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t idx = next++; idx < cells.size(); idx = next++) handle_face(idx);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    pool.clear();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t idx = 0; idx < cells.size(); ++idx) handle_face(idx);
  }

  Solution<T> best{T(0), {}, {}};
  bool have = false;
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (!found[idx]) continue;
    ++best.stats.lps_feasible;
    T value = evaluate(inst, *found[idx]);
    if (!have || value > best.f_star) {
      best.f_star = std::move(value);
      best.x_star = *found[idx];
      have = true;
    }
  }
  if (!have) throw std::logic_error("solve: no stationary face found (every vertex face must be feasible)");

  best.stats.faces_enumerated = cells.size();
  best.stats.lps_solved = cells.size();
  best.stats.enumeration_lps = astats.lps_solved;
  best.stats.rank_used = fac.r;
  best.stats.homogenized = h.was_homogenized;
  best.stats.minimal_rank_applied = min_rank_applied;
  return finish(std::move(best));
}

}  // namespace boxqp
