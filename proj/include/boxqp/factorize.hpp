#pragma once

// Rank factorization Q = U^T V, the reduced form y^T W y over y = G x, and
// minimal-rank representation of a quadratic form.

#include <boxqp/qp_model.hpp>
#include <boxqp/surd.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace boxqp {

template <class T>
struct Factorization {
  std::size_t r = 0;
  Matrix<T> U;  // r x n
  Matrix<T> V;  // r x n
  Matrix<T> G;  // 2r x n, U stacked over V
  Matrix<T> W;  // 2r x 2r, (1/2) [[0, I], [I, 0]]
};

struct Signature {
  std::size_t p = 0;
  std::size_t q_neg = 0;
  std::size_t s = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// W = (1/2) [[0, I_r], [I_r, 0]].
template <class T>
Matrix<T> reduction_weight(std::size_t r) {
  Matrix<T> W(2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) {
    W(i, r + i) = T(1) / T(2);
    W(r + i, i) = T(1) / T(2);
  }
  return W;
}

/// Stacks U over V and builds W. Requires r >= 1.
template <class T>
std::pair<Matrix<T>, Matrix<T>> build_reduction(const Factorization<T>& f) {
  if (f.r == 0) throw std::invalid_argument("build_reduction: rank 0 has no reduced form");
  const std::size_t n = f.U.cols();
  Matrix<T> G(2 * f.r, n);
  for (std::size_t i = 0; i < f.r; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      G(i, j) = f.U(i, j);
      G(f.r + i, j) = f.V(i, j);
    }
  return {std::move(G), reduction_weight<T>(f.r)};
}

/// Q = C R from Gauss-Jordan: R = nonzero rows of the reduced echelon form,
/// C = the pivot columns of Q. Then U = C^T, V = R.
template <class T>
Factorization<T> rank_factorize(const Matrix<T>& Q, double rank_tol = 1e-9) {
  const std::size_t n = Q.cols();
  auto ech = row_echelon(Q, rank_tol);
  Factorization<T> f;
  f.r = ech.rank();
  f.V = std::move(ech.reduced);
  f.U = Matrix<T>(f.r, Q.rows());
  for (std::size_t k = 0; k < f.r; ++k)
    for (std::size_t i = 0; i < Q.rows(); ++i) f.U(k, i) = Q(i, ech.pivots[k]);
  if (f.r == 0) {
    f.G = Matrix<T>(0, n);
    f.W = Matrix<T>(0, 0);
  } else {
    std::tie(f.G, f.W) = build_reduction(f);
  }
  return f;
}

/// Congruence diagonalization M S M^T = D of a symmetric matrix.
template <class T>
struct Congruence {
  Matrix<T> M;
  Vector<T> diagonal;
};

/// Symmetric Gaussian elimination with 1x1 pivots. When every remaining
/// diagonal entry vanishes but S(k, j) != 0, row/column j is added to k,
/// which creates the diagonal entry 2 S(k, j) (the rational stand-in for a
/// 2x2 pivot).
template <class T>
Congruence<T> congruence_diagonalize(const Matrix<T>& S, double tol = 1e-9) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = S.rows();
  Matrix<T> A = S;
  Matrix<T> M = Matrix<T>::identity(n);
  const double scale = std::max(max_abs(S), 1e-300);
  auto negligible = [&](const T& v) { return Tr::is_zero(v, scale, tol); };
  auto swap_sym = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    A.swap_rows(a, b);
    for (std::size_t i = 0; i < n; ++i) std::swap(A(i, a), A(i, b));
    M.swap_rows(a, b);
  };

  for (std::size_t k = 0; k < n; ++k) {
    // best remaining diagonal pivot
    std::size_t p = n;
    double best = 0.0;
    for (std::size_t j = k; j < n; ++j) {
      if (negligible(A(j, j))) continue;
      if constexpr (Tr::exact) {
        p = j;
        break;
      } else if (Tr::magnitude(A(j, j)) > best) {
        best = Tr::magnitude(A(j, j));
        p = j;
      }
    }
    if (p == n) {
      // no usable diagonal: look for an off-diagonal entry in the trailing block
      std::size_t pi = n, pj = n;
      best = 0.0;
      for (std::size_t i = k; i < n && (pi == n || !Tr::exact); ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (negligible(A(i, j))) continue;
          if (Tr::exact) {
            pi = i;
            pj = j;
            break;
          }
          if (Tr::magnitude(A(i, j)) > best) {
            best = Tr::magnitude(A(i, j));
            pi = i;
            pj = j;
          }
        }
      if (pi == n) break;  // trailing block is zero
      // row/col pi += row/col pj
      for (std::size_t c = 0; c < n; ++c) A(pi, c) += A(pj, c);
      for (std::size_t r = 0; r < n; ++r) A(r, pi) += A(r, pj);
      for (std::size_t c = 0; c < n; ++c) M(pi, c) += M(pj, c);
      p = pi;
    }
    swap_sym(k, p);

    const T pivot = A(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (Tr::is_zero(A(i, k), 1.0, 0.0)) continue;
      const T f = A(i, k) / pivot;
      for (std::size_t c = 0; c < n; ++c) A(i, c) -= f * A(k, c);
      for (std::size_t r = 0; r < n; ++r) A(r, i) -= f * A(r, k);
      for (std::size_t c = 0; c < n; ++c) M(i, c) -= f * M(k, c);
      A(i, k) = T(0);
      A(k, i) = T(0);
    }
  }

  Congruence<T> out{std::move(M), Vector<T>(n)};
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = A(i, i);
  return out;
}

/// Sylvester inertia of the symmetric part of Q.
template <class T>
Signature signature(const Matrix<T>& Q, double tol = 1e-9) {
  const Matrix<T> S = symmetric_part(Q);
  const std::size_t n = S.rows();
  Signature sig;
  if constexpr (ScalarTraits<T>::exact) {
    auto cong = congruence_diagonalize(S);
    for (const auto& d : cong.diagonal) {
      int s = sgn(d);
      if (s > 0) ++sig.p;
      else if (s < 0) ++sig.q_neg;
      else ++sig.s;
    }
  } else {
    Eigen::MatrixXd E(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) E(i, j) = S(i, j);
    const double scale = max_abs(S);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(E, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
      double l = eig.eigenvalues()(i);
      if (std::fabs(l) <= tol * scale) ++sig.s;
      else if (l > 0) ++sig.p;
      else ++sig.q_neg;
    }
  }
  return sig;
}

/// Entry type of a minimal-rank representer: exact modes need square roots.
template <class T>
using RepresenterScalar = std::conditional_t<ScalarTraits<T>::exact, QuadraticSurd, T>;

/// Returns Q'' with Q'' + Q''^T = Q + Q^T and rank(Q'') = max(p, q_neg).
///
/// In the diagonal basis z = N x of S = (Q + Q^T)/2 the form is sum d_i z_i^2.
/// Each pair (d_a > 0, d_b < 0) is replaced by the rank-1 block
/// [[d_a, c], [-c, d_b]] with c^2 = -d_a d_b, then mapped back by N^T K N.
template <class T>
Matrix<RepresenterScalar<T>> minimal_rank_matrix(const Matrix<T>& Q, double tol = 1e-9) {
  using R = RepresenterScalar<T>;
  const std::size_t n = Q.rows();
  const Matrix<T> S = symmetric_part(Q);
  auto cong = congruence_diagonalize(S, tol);
  const double scale = std::max(max_abs(S), 1e-300);

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    int s = ScalarTraits<T>::sign(cong.diagonal[i], scale, tol);
    if (s > 0) pos.push_back(i);
    else if (s < 0) neg.push_back(i);
  }
  const std::size_t pairs = std::min(pos.size(), neg.size());

  // off-diagonal entries c_k = sqrt(-d_a d_b)
  std::vector<R> offdiag;
  if constexpr (ScalarTraits<T>::exact) {
    auto basis = std::make_shared<SurdBasis>();
    std::vector<std::pair<Rational, unsigned>> roots;
    for (std::size_t k = 0; k < pairs; ++k)
      roots.push_back(basis->adjoin_sqrt(Rational(-cong.diagonal[pos[k]] * cong.diagonal[neg[k]])));
    std::shared_ptr<const SurdBasis> frozen = basis;
    for (auto& [c, mask] : roots) offdiag.push_back(mask == 0 ? R(c) : R(frozen, c, mask));
  } else {
    for (std::size_t k = 0; k < pairs; ++k)
      offdiag.push_back(std::sqrt(-cong.diagonal[pos[k]] * cong.diagonal[neg[k]]));
  }

  Matrix<R> K(n, n);
  for (std::size_t i = 0; i < n; ++i)
    if (!ScalarTraits<T>::is_zero(cong.diagonal[i], scale, tol)) K(i, i) = R(cong.diagonal[i]);
  for (std::size_t k = 0; k < pairs; ++k) {
    K(pos[k], neg[k]) = offdiag[k];
    K(neg[k], pos[k]) = -offdiag[k];
  }

  // N = M^{-T}; Q'' = N^T K N = M^{-1} K M^{-T}
  const Matrix<T> Minv = inverse(cong.M, tol);
  Matrix<R> left(n, n), right(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      left(i, j) = R(Minv(i, j));
      right(j, i) = R(Minv(i, j));
    }
  return left * K * right;
}

}  // namespace boxqp
