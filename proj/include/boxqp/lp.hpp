#pragma once

// Phase-1 bounded-variable primal simplex for feasibility of
//   A x = b,  lower <= x <= upper   (bounds may be absent = infinite).
//
// One artificial per row absorbs the initial residual; the sum of
// artificials is minimized. Dense tableau, deterministic pivot rules.

#include <boxqp/matrix.hpp>

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace boxqp {

enum class PivotRule {
  Bland,    // smallest eligible index; terminates in exact arithmetic
  Dantzig,  // most negative reduced cost, falls back to Bland on degenerate streaks
};

struct LpOptions {
  PivotRule rule = PivotRule::Bland;
  double tol = 1e-8;  // float mode only
  std::size_t max_iterations = 200000;
  std::size_t degenerate_streak = 50;
};

template <class T>
struct VariableBounds {
  std::vector<std::optional<T>> lower;
  std::vector<std::optional<T>> upper;

  static VariableBounds free(std::size_t d) { return {std::vector<std::optional<T>>(d), std::vector<std::optional<T>>(d)}; }
  std::size_t size() const { return lower.size(); }
};

template <class T>
struct LpResult {
  std::optional<Vector<T>> point;
  /// When infeasible: multipliers y with y^T b > max over the box of y^T A x.
  Vector<T> farkas;
  std::size_t pivots = 0;
  bool feasible() const { return point.has_value(); }
};

namespace detail {

template <class T>
class Phase1Simplex {
  using Tr = ScalarTraits<T>;
  enum class Status { Basic, AtLower, AtUpper, Free, Retired };

 public:
  Phase1Simplex(const Matrix<T>& A, const Vector<T>& b, const VariableBounds<T>& bounds, const LpOptions& opts)
      : m_(A.rows()), d_(A.cols()), opts_(opts), lower_(bounds.lower), upper_(bounds.upper) {
    if (b.size() != m_ || bounds.lower.size() != d_ || bounds.upper.size() != d_)
      throw std::invalid_argument("lp: shape mismatch");
    const std::size_t ncols = d_ + m_;
    lower_.resize(ncols, T(0));  // artificials: [0, inf)
    upper_.resize(ncols);
    value_.assign(ncols, T(0));
    status_.assign(ncols, Status::Free);
    tab_ = Matrix<T>(m_, ncols);
    row_sign_.assign(m_, T(1));
    basis_.resize(m_);
    dcost_.assign(ncols, T(0));

    for (std::size_t j = 0; j < d_; ++j) {
      if (lower_[j] && upper_[j] && *lower_[j] > *upper_[j]) infeasible_bounds_ = true;
      if (lower_[j]) {
        value_[j] = *lower_[j];
        status_[j] = Status::AtLower;
      } else if (upper_[j]) {
        value_[j] = *upper_[j];
        status_[j] = Status::AtUpper;
      }
    }
    scale_ = std::max({1.0, max_abs(A), max_abs(std::span<const T>(b))});
    for (std::size_t i = 0; i < m_; ++i) {
      T residual = b[i];
      for (std::size_t j = 0; j < d_; ++j) residual -= A(i, j) * value_[j];
      if (residual < T(0)) row_sign_[i] = T(-1);
      for (std::size_t j = 0; j < d_; ++j) tab_(i, j) = row_sign_[i] * A(i, j);
      tab_(i, d_ + i) = T(1);
      basis_[i] = d_ + i;
      status_[d_ + i] = Status::Basic;
      value_[d_ + i] = row_sign_[i] * residual;
    }
    // reduced costs for c = (0, 1): d_j = c_j - sum_i tab(i, j)
    for (std::size_t j = 0; j < ncols; ++j) {
      T s = j >= d_ ? T(1) : T(0);
      for (std::size_t i = 0; i < m_; ++i) s -= tab_(i, j);
      dcost_[j] = s;
    }
  }

  LpResult<T> run() {
    LpResult<T> out;
    if (infeasible_bounds_) return out;
    bool bland = opts_.rule == PivotRule::Bland;
    std::size_t streak = 0;
    for (std::size_t iter = 0; iter < opts_.max_iterations; ++iter) {
      auto entering = choose_entering(bland);
      if (!entering) break;
      const auto [j, dir] = *entering;
      const bool degenerate = step(j, dir);
      ++out.pivots;
      streak = degenerate ? streak + 1 : 0;
      if (!bland && streak >= opts_.degenerate_streak) bland = true;
    }

    T objective(0);
    for (std::size_t i = 0; i < m_; ++i) objective += value_[d_ + i];
    if (Tr::is_zero(objective, scale_, opts_.tol)) {
      Vector<T> x(value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(d_));
      clamp_to_bounds(x);
      out.point = std::move(x);
    } else {
      out.farkas.resize(m_);
      for (std::size_t i = 0; i < m_; ++i) out.farkas[i] = row_sign_[i] * (T(1) - dcost_[d_ + i]);
    }
    return out;
  }

 private:
  bool can_increase(std::size_t j) const {
    if (status_[j] == Status::Free) return true;
    if (status_[j] != Status::AtLower) return false;
    return !upper_[j] || *upper_[j] > value_[j];
  }
  bool can_decrease(std::size_t j) const {
    if (status_[j] == Status::Free) return true;
    if (status_[j] != Status::AtUpper) return false;
    return !lower_[j] || *lower_[j] < value_[j];
  }

  std::optional<std::pair<std::size_t, int>> choose_entering(bool bland) const {
    std::optional<std::pair<std::size_t, int>> best;
    double best_mag = 0.0;
    for (std::size_t j = 0; j < d_ + m_; ++j) {
      if (status_[j] == Status::Basic || status_[j] == Status::Retired) continue;
      const int s = Tr::sign(dcost_[j], 1.0, opts_.tol);
      int dir = 0;
      if (s < 0 && can_increase(j)) dir = 1;
      else if (s > 0 && can_decrease(j)) dir = -1;
      if (dir == 0) continue;
      if (bland) return std::make_pair(j, dir);
      const double mag = Tr::magnitude(dcost_[j]);
      if (!best || mag > best_mag) {
        best = std::make_pair(j, dir);
        best_mag = mag;
      }
    }
    return best;
  }

  /// Moves x_j in direction dir as far as the ratio test allows. Returns true
  /// when the step length is zero.
  bool step(std::size_t j, int dir) {
    const T sdir = T(dir);
    std::optional<T> limit;
    std::size_t leave_row = m_;
    if (lower_[j] && upper_[j]) limit = *upper_[j] - *lower_[j];

    for (std::size_t i = 0; i < m_; ++i) {
      if (Tr::is_zero(tab_(i, j), 1.0, opts_.tol)) continue;
      const std::size_t v = basis_[i];
      const T rate = -sdir * tab_(i, j);  // d x_v / d t
      std::optional<T> room;
      if (rate < T(0) && lower_[v]) room = T((value_[v] - *lower_[v]) / (-rate));
      else if (rate > T(0) && upper_[v]) room = T((*upper_[v] - value_[v]) / rate);
      if (!room) continue;
      if (*room < T(0)) *room = T(0);
      const bool better = !limit || *room < *limit ||
                          (*room == *limit && leave_row < m_ && basis_[i] < basis_[leave_row]);
      if (better) {
        limit = *room;
        leave_row = i;
      }
    }
    if (!limit) throw std::logic_error("lp: unbounded phase-1 ray");
    const T t = *limit;

    value_[j] += sdir * t;
    for (std::size_t i = 0; i < m_; ++i) value_[basis_[i]] -= sdir * tab_(i, j) * t;

    if (leave_row == m_) {
      // bound flip
      status_[j] = dir > 0 ? Status::AtUpper : Status::AtLower;
      value_[j] = dir > 0 ? *upper_[j] : *lower_[j];
      return Tr::is_zero(t, 1.0, 0.0);
    }

    const std::size_t leaving = basis_[leave_row];
    const T rate = -sdir * tab_(leave_row, j);
    if (leaving >= d_) {
      status_[leaving] = Status::Retired;
      value_[leaving] = T(0);
    } else if (rate < T(0)) {
      status_[leaving] = Status::AtLower;
      value_[leaving] = *lower_[leaving];
    } else {
      status_[leaving] = Status::AtUpper;
      value_[leaving] = *upper_[leaving];
    }
    pivot(leave_row, j);
    status_[j] = Status::Basic;
    basis_[leave_row] = j;
    return Tr::is_zero(t, 1.0, 0.0);
  }

  void pivot(std::size_t r, std::size_t j) {
    const std::size_t ncols = d_ + m_;
    const T inv = T(1) / tab_(r, j);
    for (std::size_t c = 0; c < ncols; ++c) tab_(r, c) *= inv;
    tab_(r, j) = T(1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || Tr::is_zero(tab_(i, j), 1.0, 0.0)) continue;
      const T f = tab_(i, j);
      for (std::size_t c = 0; c < ncols; ++c) tab_(i, c) -= f * tab_(r, c);
      tab_(i, j) = T(0);
    }
    if (!Tr::is_zero(dcost_[j], 1.0, 0.0)) {
      const T f = dcost_[j];
      for (std::size_t c = 0; c < ncols; ++c) dcost_[c] -= f * tab_(r, c);
      dcost_[j] = T(0);
    }
  }

  void clamp_to_bounds(Vector<T>& x) const {
    if constexpr (!Tr::exact) {
      for (std::size_t j = 0; j < d_; ++j) {
        if (lower_[j] && x[j] < *lower_[j]) x[j] = *lower_[j];
        if (upper_[j] && x[j] > *upper_[j]) x[j] = *upper_[j];
      }
    }
  }

  std::size_t m_, d_;
  LpOptions opts_;
  std::vector<std::optional<T>> lower_, upper_;
  Vector<T> value_;
  std::vector<Status> status_;
  Matrix<T> tab_;
  Vector<T> row_sign_;
  std::vector<std::size_t> basis_;
  Vector<T> dcost_;
  double scale_ = 1.0;
  bool infeasible_bounds_ = false;
};

}  // namespace detail

/// Full phase-1 outcome including the infeasibility multipliers.
template <class T>
LpResult<T> lp_phase1(const Matrix<T>& A, const Vector<T>& b, const VariableBounds<T>& bounds,
                      const LpOptions& opts = {}) {
  return detail::Phase1Simplex<T>(A, b, bounds, opts).run();
}

/// A point with A x = b inside the bounds, or nothing.
template <class T>
std::optional<Vector<T>> lp_feasible(const Matrix<T>& A, const Vector<T>& b, const VariableBounds<T>& bounds,
                                     const LpOptions& opts = {}) {
  return lp_phase1(A, b, bounds, opts).point;
}

}  // namespace boxqp
