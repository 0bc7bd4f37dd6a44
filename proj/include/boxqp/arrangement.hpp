#pragma once

// Covector enumeration for the central arrangement {y : g_i^T y = 0} given by
// the columns g_i of G. Each realizable sign vector names a cell of the
// arrangement and, dually, a face of the zonotope G * box.

#include <boxqp/lp.hpp>
#include <boxqp/matrix.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace boxqp {

class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t n) : s_(n, 0) {}
  SignVector(std::initializer_list<int> init) {
    for (int v : init) s_.push_back(static_cast<std::int8_t>(v));
  }
  explicit SignVector(std::vector<std::int8_t> s) : s_(std::move(s)) {}

  std::size_t size() const { return s_.size(); }
  int operator[](std::size_t i) const { return s_[i]; }
  void set(std::size_t i, int v) { s_[i] = static_cast<std::int8_t>(v); }
  void push_back(int v) { s_.push_back(static_cast<std::int8_t>(v)); }

  std::size_t zeros() const { return static_cast<std::size_t>(std::count(s_.begin(), s_.end(), 0)); }
  bool all_zero() const { return zeros() == s_.size(); }

  std::string to_string() const {
    std::string out;
    for (auto v : s_) out += v > 0 ? '+' : (v < 0 ? '-' : '0');
    return out;
  }

  friend bool operator==(const SignVector&, const SignVector&) = default;

  /// Enumeration order: on the first differing index, +1 < 0 < -1.
  friend bool operator<(const SignVector& a, const SignVector& b) {
    auto rank = [](int v) { return v > 0 ? 0 : (v == 0 ? 1 : 2); };
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a.s_[i] != b.s_[i]) return rank(a.s_[i]) < rank(b.s_[i]);
    return a.size() < b.size();
  }

 private:
  std::vector<std::int8_t> s_;
};

inline SignVector mirror(const SignVector& sigma) {
  SignVector out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out.set(i, -sigma[i]);
  return out;
}

template <class T>
struct Cell {
  SignVector sigma;
  Vector<T> witness;  // a point y with sign(g_i^T y) = sigma_i
};

struct ArrangementOptions {
  Tolerances tol{};
  LpOptions lp{};
};

struct ArrangementStats {
  std::size_t lps_solved = 0;
};

namespace detail {

template <class T>
double norm2(std::span<const T> v) {
  double s = 0.0;
  for (const auto& x : v) {
    double d = ScalarTraits<T>::to_double(x);
    s += d * d;
  }
  return std::sqrt(s);
}

template <class T>
T column_dot(const Matrix<T>& G, std::size_t col, std::span<const T> y) {
  T s(0);
  for (std::size_t k = 0; k < G.rows(); ++k) s += G(k, col) * y[k];
  return s;
}

/// Sign of g_col^T y with the relative float tolerance |g||y|.
template <class T>
int column_sign(const Matrix<T>& G, std::size_t col, std::span<const T> y, const Tolerances& tol) {
  const T v = column_dot(G, col, y);
  if constexpr (ScalarTraits<T>::exact) {
    return sgn(v);
  } else {
    const Vector<T> g = G.col(col);
    return ScalarTraits<T>::sign(v, norm2(std::span<const T>(g)) * norm2(y), tol.sign);
  }
}

template <class T>
bool column_is_zero(const Matrix<T>& G, std::size_t col, double scale) {
  for (std::size_t k = 0; k < G.rows(); ++k)
    if (!ScalarTraits<T>::is_zero(G(k, col), scale, 1e-12)) return false;
  return true;
}

/// Basis (as columns) of {y : g_j^T y = 0 for every j < prefix with sigma_j = 0}.
template <class T>
Matrix<T> zero_subspace(const Matrix<T>& G, const SignVector& sigma, std::size_t prefix, const Tolerances& tol) {
  const std::size_t d = G.rows();
  std::vector<std::size_t> zero_idx;
  for (std::size_t j = 0; j < prefix; ++j)
    if (sigma[j] == 0) zero_idx.push_back(j);
  if (zero_idx.empty()) return Matrix<T>::identity(d);
  Matrix<T> rows(zero_idx.size(), d);
  for (std::size_t k = 0; k < zero_idx.size(); ++k)
    for (std::size_t c = 0; c < d; ++c) rows(k, c) = G(c, zero_idx[k]);
  return null_space(rows, tol.rank);
}

/// Rescales y so that min over nonzero-sign columns j < prefix of |g_j^T y| is 1.
template <class T>
void normalize_witness(const Matrix<T>& G, const SignVector& sigma, std::size_t prefix, Vector<T>& y) {
  std::optional<T> smallest;
  for (std::size_t j = 0; j < prefix; ++j) {
    if (sigma[j] == 0) continue;
    T v = column_dot(G, j, std::span<const T>(y));
    if (v < T(0)) v = -v;
    if (!smallest || v < *smallest) smallest = v;
  }
  if (!smallest || ScalarTraits<T>::is_zero(*smallest, 1.0, 0.0)) return;
  const T inv = T(1) / *smallest;
  for (auto& c : y) c *= inv;
}

/// Moves a witness y of `sigma` (prefix columns) off the hyperplane of column
/// h to side `side`, keeping every other sign. `basis` spans the zero subspace.
template <class T>
Vector<T> push_off_hyperplane(const Matrix<T>& G, const SignVector& sigma, std::size_t prefix, const Vector<T>& y,
                              const Matrix<T>& basis, std::size_t h, int side) {
  const std::size_t d = G.rows();
  // dir = B B^T h lies in the zero subspace and h^T dir = |B^T h|^2 > 0
  Vector<T> bth(basis.cols(), T(0));
  for (std::size_t k = 0; k < basis.cols(); ++k)
    for (std::size_t c = 0; c < d; ++c) bth[k] += basis(c, k) * G(c, h);
  Vector<T> dir(d, T(0));
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t k = 0; k < basis.cols(); ++k) dir[c] += basis(c, k) * bth[k];

  // step small enough to keep every strict sign (their margins are >= 1)
  T worst(0);
  for (std::size_t j = 0; j < prefix; ++j) {
    if (sigma[j] == 0) continue;
    T v = column_dot(G, j, std::span<const T>(dir));
    if (v < T(0)) v = -v;
    if (v > worst) worst = v;
  }
  const T step = ScalarTraits<T>::is_zero(worst, 1.0, 0.0) ? T(side) : T(T(side) / (T(2) * worst));
  Vector<T> out = y;
  for (std::size_t c = 0; c < d; ++c) out[c] += step * dir[c];
  return out;
}

}  // namespace detail

/// LP certificate for one sign vector: a witness y with g_i^T y = 0 where
/// sigma_i = 0 and sigma_i g_i^T y >= 1 elsewhere, or nothing.
///
/// Decided by Gordan's alternative inside the zero subspace L = span(B):
/// with c_j = sigma_j B^T g_j, either some z has c_j^T z > 0 for all j, or
/// mu >= 0 with sum mu = 1 and sum mu_j c_j = 0 exists. The phase-1
/// multipliers of the second system provide z when it is infeasible.
template <class T>
std::optional<Vector<T>> realizable(const Matrix<T>& G, const SignVector& sigma, const ArrangementOptions& opts = {},
                                    ArrangementStats* stats = nullptr) {
  const std::size_t d = G.rows(), n = G.cols();
  if (sigma.size() != n) throw std::invalid_argument("realizable: sign vector length mismatch");

  const double scale = max_abs(G);
  std::vector<std::size_t> nonzero;
  for (std::size_t j = 0; j < n; ++j) {
    if (sigma[j] == 0) continue;
    if (detail::column_is_zero(G, j, scale)) return std::nullopt;
    nonzero.push_back(j);
  }
  if (nonzero.empty()) return Vector<T>(d, T(0));

  const Matrix<T> B = detail::zero_subspace(G, sigma, n, opts.tol);
  const std::size_t dim = B.cols();
  if (dim == 0) return std::nullopt;

  Matrix<T> A(dim + 1, nonzero.size());
  for (std::size_t k = 0; k < nonzero.size(); ++k) {
    const std::size_t j = nonzero[k];
    for (std::size_t a = 0; a < dim; ++a) {
      T s(0);
      for (std::size_t c = 0; c < d; ++c) s += B(c, a) * G(c, j);
      A(a, k) = sigma[j] > 0 ? s : T(-s);
    }
    A(dim, k) = T(1);
  }
  Vector<T> rhs(dim + 1, T(0));
  rhs[dim] = T(1);
  VariableBounds<T> bounds{std::vector<std::optional<T>>(nonzero.size(), T(0)),
                           std::vector<std::optional<T>>(nonzero.size())};

  if (stats) ++stats->lps_solved;
  const auto res = lp_phase1(A, rhs, bounds, opts.lp);
  if (res.feasible()) return std::nullopt;

  const T pi0 = res.farkas[dim];
  if (!(pi0 > T(0))) throw std::logic_error("realizable: malformed infeasibility certificate");
  Vector<T> z(dim);
  for (std::size_t a = 0; a < dim; ++a) z[a] = -res.farkas[a] / pi0;
  Vector<T> y = B * z;

  for (auto j : nonzero) {
    const T v = detail::column_dot(G, j, std::span<const T>(y));
    const T margin = sigma[j] > 0 ? v : T(-v);
    if constexpr (ScalarTraits<T>::exact) {
      if (margin < T(1)) throw std::logic_error("realizable: witness failed exact verification");
    } else {
      if (detail::column_sign(G, j, std::span<const T>(y), opts.tol) != sigma[j]) return std::nullopt;
    }
  }
  return y;
}

/// All realizable sign vectors of the arrangement with witnesses, in
/// enumeration order (+1 < 0 < -1 on the first differing index).
///
/// Hyperplanes are inserted one at a time. A partial cell whose witness is
/// strictly on one side of the new hyperplane keeps that sign for free; the
/// zero and opposite extensions exist iff the cell meets the hyperplane,
/// which costs one LP. Only cells whose first nonzero sign is +1 are grown;
/// the rest are mirrors.
template <class T>
std::vector<Cell<T>> enumerate_covectors(const Matrix<T>& G, const ArrangementOptions& opts = {},
                                         ArrangementStats* stats = nullptr) {
  const std::size_t d = G.rows(), n = G.cols();
  const double scale = max_abs(G);
  std::vector<Cell<T>> level{{SignVector{}, Vector<T>(d, T(0))}};

  for (std::size_t h = 0; h < n; ++h) {
    std::vector<Cell<T>> next;
    next.reserve(level.size() * 2);
    const bool zero_column = detail::column_is_zero(G, h, scale);
    for (auto& cell : level) {
      auto extend = [&](int s, Vector<T> y) {
        Cell<T> child{cell.sigma, std::move(y)};
        child.sigma.push_back(s);
        detail::normalize_witness(G, child.sigma, h + 1, child.witness);
        next.push_back(std::move(child));
      };
      if (zero_column) {
        extend(0, cell.witness);
        continue;
      }
      const bool fresh = cell.sigma.all_zero();
      int s = detail::column_sign(G, h, std::span<const T>(cell.witness), opts.tol);

      if (s == 0) {
        const Matrix<T> basis = detail::zero_subspace(G, cell.sigma, h, opts.tol);
        bool vanishes = true;
        for (std::size_t k = 0; k < basis.cols(); ++k) {
          T v(0);
          for (std::size_t c = 0; c < d; ++c) v += basis(c, k) * G(c, h);
          if (!ScalarTraits<T>::is_zero(v, scale, opts.tol.rank)) vanishes = false;
        }
        extend(0, cell.witness);
        if (vanishes) continue;
        extend(1, detail::push_off_hyperplane(G, cell.sigma, h, cell.witness, basis, h, 1));
        if (!fresh) extend(-1, detail::push_off_hyperplane(G, cell.sigma, h, cell.witness, basis, h, -1));
        continue;
      }

      Vector<T> y = cell.witness;
      if (fresh && s < 0) {
        for (auto& c : y) c = -c;
        s = 1;
      }
      SignVector on_plane = cell.sigma;
      on_plane.push_back(0);
      Matrix<T> prefix_cols(d, h + 1);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c <= h; ++c) prefix_cols(r, c) = G(r, c);
      auto w = realizable(prefix_cols, on_plane, opts, stats);

      extend(s, std::move(y));
      if (!w) continue;
      extend(0, *w);
      if (!fresh) {
        const Matrix<T> basis = detail::zero_subspace(G, cell.sigma, h, opts.tol);
        extend(-s, detail::push_off_hyperplane(G, cell.sigma, h, *w, basis, h, -s));
      }
    }
    level = std::move(next);
  }

  std::vector<Cell<T>> out;
  out.reserve(level.size() * 2);
  for (auto& cell : level) {
    if (!cell.sigma.all_zero()) {
      Vector<T> neg = cell.witness;
      for (auto& c : neg) c = -c;
      out.push_back({mirror(cell.sigma), std::move(neg)});
    }
    out.push_back(std::move(cell));
  }
  std::sort(out.begin(), out.end(), [](const Cell<T>& a, const Cell<T>& b) { return a.sigma < b.sigma; });
  return out;
}

/// Dimension of the zonotope face named by sigma: rank of the zero-sign columns.
template <class T>
std::size_t face_dimension(const Matrix<T>& G, const SignVector& sigma, double rank_tol = 1e-9) {
  std::vector<std::size_t> zero_idx;
  for (std::size_t j = 0; j < sigma.size(); ++j)
    if (sigma[j] == 0) zero_idx.push_back(j);
  return rank(select_columns(G, std::span<const std::size_t>(zero_idx)), rank_tol);
}

}  // namespace boxqp
