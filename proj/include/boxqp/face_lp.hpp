#pragma once

// Per-face stationary-point test. For a sign vector sigma, coordinates with
// sigma_i = +1 sit at their upper bound, sigma_i = -1 at their lower bound,
// and the zero-sign coordinates x_A stay free in the box. A stationary point
// of y^T W y on the face's affine hull {y : A y = A b} exists iff
//   A^T lambda - 2 W G_A x_A = 2 W b,   lower_A <= x_A <= upper_A
// is feasible for some free lambda.

#include <boxqp/arrangement.hpp>
#include <boxqp/lp.hpp>
#include <boxqp/qp_model.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxqp {

template <class T>
struct FaceSystem {
  std::vector<std::size_t> free_idx;   // Z: sigma_i = 0, size k
  std::vector<std::size_t> fixed_idx;  // complement of Z, ascending
  Vector<T> fixed_part;                // x_b, aligned with fixed_idx
  Matrix<T> G_A;                       // 2r x k
  Matrix<T> A;                         // l x 2r, rows span the orthogonal complement of col(G_A)
  Vector<T> b;                         // G_b x_b
  Vector<T> free_lower;
  Vector<T> free_upper;

  std::size_t k() const { return free_idx.size(); }
  std::size_t ell() const { return A.rows(); }
};

template <class T>
struct StationaryCandidate {
  Vector<T> x;
  T value;
  SignVector sigma;
};

template <class T>
FaceSystem<T> build_face_system(const Matrix<T>& G, const Vector<T>& lower, const Vector<T>& upper,
                                const SignVector& sigma, double rank_tol = 1e-9) {
  const std::size_t n = G.cols(), d = G.rows();
  if (sigma.size() != n || lower.size() != n || upper.size() != n)
    throw std::invalid_argument("build_face_system: length mismatch");
  FaceSystem<T> fs;
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] == 0) {
      fs.free_idx.push_back(i);
      fs.free_lower.push_back(lower[i]);
      fs.free_upper.push_back(upper[i]);
    } else {
      fs.fixed_idx.push_back(i);
      fs.fixed_part.push_back(sigma[i] > 0 ? upper[i] : lower[i]);
    }
  }
  fs.G_A = select_columns(G, std::span<const std::size_t>(fs.free_idx));
  fs.A = null_space(fs.G_A.transpose(), rank_tol).transpose();
  if (fs.A.rows() == 0) fs.A = Matrix<T>(0, d);

  fs.b.assign(d, T(0));
  for (std::size_t k = 0; k < fs.fixed_idx.size(); ++k) {
    const std::size_t j = fs.fixed_idx[k];
    for (std::size_t r = 0; r < d; ++r) fs.b[r] += G(r, j) * fs.fixed_part[k];
  }
  return fs;
}

/// Solves the face's stationary LP; returns x_A of some feasible (lambda, x_A).
template <class T>
std::optional<Vector<T>> stationary_point(const FaceSystem<T>& fs, const Matrix<T>& W, const LpOptions& lp = {}) {
  const std::size_t d = W.rows(), ell = fs.ell(), k = fs.k();
  const Matrix<T> W2G = W * fs.G_A;
  Matrix<T> M(d, ell + k);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t a = 0; a < ell; ++a) M(r, a) = fs.A(a, r);
    for (std::size_t c = 0; c < k; ++c) M(r, ell + c) = T(-2) * W2G(r, c);
  }
  Vector<T> rhs = W * fs.b;
  for (auto& v : rhs) v *= T(2);

  VariableBounds<T> bounds = VariableBounds<T>::free(ell + k);
  for (std::size_t c = 0; c < k; ++c) {
    bounds.lower[ell + c] = fs.free_lower[c];
    bounds.upper[ell + c] = fs.free_upper[c];
  }
  auto sol = lp_feasible(M, rhs, bounds, lp);
  if (!sol) return std::nullopt;
  return Vector<T>(sol->begin() + static_cast<std::ptrdiff_t>(ell), sol->end());
}

/// Interleaves x_A with the fixed coordinates and evaluates the objective.
template <class T>
StationaryCandidate<T> assemble_candidate(const FaceSystem<T>& fs, const Vector<T>& x_free, const QpInstance<T>& inst,
                                          const SignVector& sigma) {
  if (x_free.size() != fs.k()) throw std::invalid_argument("assemble_candidate: length mismatch");
  Vector<T> x(fs.k() + fs.fixed_idx.size(), T(0));
  for (std::size_t c = 0; c < fs.k(); ++c) {
    if (x_free[c] < fs.free_lower[c] || x_free[c] > fs.free_upper[c])
      throw std::out_of_range("assemble_candidate: bound violation at index " + std::to_string(fs.free_idx[c]));
    x[fs.free_idx[c]] = x_free[c];
  }
  for (std::size_t c = 0; c < fs.fixed_idx.size(); ++c) x[fs.fixed_idx[c]] = fs.fixed_part[c];
  T value = evaluate(inst, x);
  return {std::move(x), std::move(value), sigma};
}

}  // namespace boxqp
