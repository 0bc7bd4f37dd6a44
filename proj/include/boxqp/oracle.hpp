#pragma once

// Reference solver over all 3^n faces of the box, working directly in
// x-space, plus the seeded random instance generator used by the tests.
// Shares only the LP routine with the zonotope pipeline.

#include <boxqp/lp.hpp>
#include <boxqp/qp_model.hpp>
#include <boxqp/solver.hpp>

#include <random>
#include <stdexcept>
#include <string>

namespace boxqp {

inline constexpr std::size_t kDefaultOracleCap = 10;

class OracleCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Face fixing: +1 -> upper, -1 -> lower, 0 -> free.
template <class T>
std::optional<Vector<T>> box_face_stationary_point(const QpInstance<T>& inst, const SignVector& sigma,
                                                   const LpOptions& lp) {
  const std::size_t n = inst.n;
  Vector<T> x(n, T(0));
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] == 0) free_idx.push_back(i);
    else x[i] = sigma[i] > 0 ? inst.upper[i] : inst.lower[i];
  }
  const std::size_t k = free_idx.size();
  if (k == 0) return x;

  // ((Q + Q^T) x + q)_Z = 0 in the free variables
  Matrix<T> M(k, k);
  Vector<T> rhs(k, T(0));
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t i = free_idx[a];
    rhs[a] = -inst.q[i];
    for (std::size_t j = 0; j < n; ++j) {
      const T s = inst.Q(i, j) + inst.Q(j, i);
      if (sigma[j] != 0) rhs[a] -= s * x[j];
    }
    for (std::size_t b = 0; b < k; ++b) {
      const std::size_t j = free_idx[b];
      M(a, b) = inst.Q(i, j) + inst.Q(j, i);
    }
  }
  VariableBounds<T> bounds = VariableBounds<T>::free(k);
  for (std::size_t b = 0; b < k; ++b) {
    bounds.lower[b] = inst.lower[free_idx[b]];
    bounds.upper[b] = inst.upper[free_idx[b]];
  }
  auto sol = lp_feasible(M, rhs, bounds, lp);
  if (!sol) return std::nullopt;
  for (std::size_t b = 0; b < k; ++b) x[free_idx[b]] = (*sol)[b];
  return x;
}

/// Advances sigma through {-1,0,+1}^n in the order +1 < 0 < -1 (last index fastest).
inline bool next_sign_vector(SignVector& sigma) {
  for (std::size_t i = sigma.size(); i-- > 0;) {
    if (sigma[i] == 1) {
      sigma.set(i, 0);
      return true;
    }
    if (sigma[i] == 0) {
      sigma.set(i, -1);
      return true;
    }
    sigma.set(i, 1);
  }
  return false;
}

}  // namespace detail

template <class T>
Solution<T> brute_force_solve(const QpInstance<T>& inst, std::size_t cap = kDefaultOracleCap,
                              const LpOptions& lp = {}) {
  if (inst.n > cap)
    throw OracleCapError("oracle: n = " + std::to_string(inst.n) + " exceeds cap " + std::to_string(cap));
  const auto started = std::chrono::steady_clock::now();
  SignVector sigma(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) sigma.set(i, 1);

  Solution<T> best{T(0), {}, {}};
  bool have = false;
  do {
    ++best.stats.faces_enumerated;
    ++best.stats.lps_solved;
    auto x = detail::box_face_stationary_point(inst, sigma, lp);
    if (!x) continue;
    ++best.stats.lps_feasible;
    T value = evaluate(inst, *x);
    if (!have || value > best.f_star) {
      best.f_star = std::move(value);
      best.x_star = std::move(*x);
      have = true;
    }
  } while (detail::next_sign_vector(sigma));
  best.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return best;
}

/// Whether x is stationary with respect to the smallest face of the box
/// containing it: the gradient vanishes on every coordinate strictly inside
/// its bounds.
template <class T>
bool stationarity_check(const QpInstance<T>& inst, const Vector<T>& x, double tol = 1e-9) {
  if (!within_bounds(inst, std::span<const T>(x))) throw std::invalid_argument("stationarity_check: x is infeasible");
  const double scale = std::max(1.0, max_abs(inst.Q) * max_abs(std::span<const T>(x)) + max_abs(std::span<const T>(inst.q)));
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (!(inst.lower[i] < x[i] && x[i] < inst.upper[i])) continue;
    T g = inst.q[i];
    for (std::size_t j = 0; j < inst.n; ++j) g += (inst.Q(i, j) + inst.Q(j, i)) * x[j];
    if (!ScalarTraits<T>::is_zero(g, scale, tol)) return false;
  }
  return true;
}

struct GeneratorOptions {
  std::size_t n = 3;
  std::size_t rank = 1;
  std::uint64_t seed = 0;
  long coeff_range = 5;  // entries of U, V and q drawn from [-coeff_range, coeff_range]
  long bound_range = 5;  // lower in [-bound_range, bound_range], width in [0, bound_range]
  bool zero_linear = false;
  bool force_degenerate = false;  // pin at least one coordinate (lower == upper)
};

/// Q = U^T V with random integer r x n factors, resampled until rank(Q) is exact.
inline QpInstance<Rational> generate_instance(const GeneratorOptions& g) {
  if (g.n == 0) throw std::invalid_argument("generate_instance: n must be positive");
  if (g.rank > g.n)
    throw std::invalid_argument("generate_instance: rank " + std::to_string(g.rank) + " exceeds n = " +
                                std::to_string(g.n));
  std::mt19937_64 rng(g.seed);
  auto draw = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };

  QpInstance<Rational> inst;
  inst.n = g.n;
  inst.Q = Matrix<Rational>(g.n, g.n);
  if (g.rank > 0) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) throw std::runtime_error("generate_instance: could not reach requested rank");
      Matrix<Rational> U(g.rank, g.n), V(g.rank, g.n);
      for (std::size_t k = 0; k < g.rank; ++k)
        for (std::size_t j = 0; j < g.n; ++j) {
          U(k, j) = draw(-g.coeff_range, g.coeff_range);
          V(k, j) = draw(-g.coeff_range, g.coeff_range);
        }
      inst.Q = U.transpose() * V;
      if (rank(inst.Q) == g.rank) break;
    }
  }
  inst.q.assign(g.n, Rational(0));
  if (!g.zero_linear)
    for (auto& c : inst.q) c = draw(-g.coeff_range, g.coeff_range);
  for (std::size_t i = 0; i < g.n; ++i) {
    long lo = draw(-g.bound_range, g.bound_range);
    long width = draw(0, std::max(0L, g.bound_range));
    inst.lower.emplace_back(lo);
    inst.upper.emplace_back(lo + width);
  }
  if (g.force_degenerate) {
    const auto i = static_cast<std::size_t>(draw(0, static_cast<long>(g.n) - 1));
    inst.upper[i] = inst.lower[i];
  }
  return validate(std::move(inst));
}

}  // namespace boxqp
