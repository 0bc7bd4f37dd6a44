#pragma once

// Small dense row-major matrix plus the Gaussian-elimination kernels shared
// by factorize, face_lp and the oracle. Works over any field type that has a
// ScalarTraits specialization.

#include <boxqp/scalar.hpp>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxqp {

template <class T>
using Vector = std::vector<T>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<T> col(std::size_t j) const {
    Vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ScalarTraits<T>::is_zero(a(i, k), 1.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Vector<T> operator*(const Matrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  Vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <class T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& x) {
  return a * std::span<const T>(x);
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  assert(a.size() == b.size());
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  return dot(std::span<const T>(a), std::span<const T>(b));
}

template <class T>
double max_abs(const Matrix<T>& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, ScalarTraits<T>::magnitude(m(i, j)));
  return best;
}

template <class T>
double max_abs(std::span<const T> v) {
  double best = 0.0;
  for (const auto& x : v) best = std::max(best, ScalarTraits<T>::magnitude(x));
  return best;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!ScalarTraits<T>::is_zero(m(i, j), 1.0, 0.0)) return false;
  return true;
}

/// Result of Gauss-Jordan elimination: `reduced` holds the nonzero rows of the
/// reduced row-echelon form (identity on the pivot columns), so that
/// M = M[:, pivots] * reduced.
template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. Exact types take the first nonzero pivot in
/// row-major scan order of the remaining block; floating types pivot on the
/// largest remaining magnitude and treat entries below rank_tol * max|M| as zero.
template <class T>
Echelon<T> row_echelon(Matrix<T> m, double rank_tol = 1e-9) {
  using Tr = ScalarTraits<T>;
  const std::size_t rows = m.rows(), cols = m.cols();
  const double scale = max_abs(m);
  std::vector<bool> used_col(cols, false);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  while (r < rows) {
    std::size_t prow = rows, pcol = cols;
    if constexpr (Tr::exact) {
      for (std::size_t j = 0; j < cols && pcol == cols; ++j) {
        if (used_col[j]) continue;
        for (std::size_t i = r; i < rows; ++i)
          if (!Tr::is_zero(m(i, j))) {
            prow = i;
            pcol = j;
            break;
          }
      }
    } else {
      double best = 0.0;
      for (std::size_t i = r; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          if (used_col[j]) continue;
          double a = Tr::magnitude(m(i, j));
          if (a > best) {
            best = a;
            prow = i;
            pcol = j;
          }
        }
      if (pcol != cols && Tr::is_zero(m(prow, pcol), scale, rank_tol)) pcol = cols;
    }
    if (pcol == cols) break;

    m.swap_rows(r, prow);
    const T inv = T(1) / m(r, pcol);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) *= inv;
    m(r, pcol) = T(1);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || Tr::is_zero(m(i, pcol), 1.0, 0.0)) continue;
      const T f = m(i, pcol);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
      m(i, pcol) = T(0);
    }
    used_col[pcol] = true;
    pivots.push_back(pcol);
    ++r;
  }

  Matrix<T> reduced(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = m(i, j);
  return {std::move(reduced), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m, double rank_tol = 1e-9) {
  return row_echelon(m, rank_tol).rank();
}

/// Basis of {x : M x = 0}, returned as the columns of an (M.cols() x nullity) matrix.
template <class T>
Matrix<T> null_space(const Matrix<T>& m, double rank_tol = 1e-9) {
  const std::size_t cols = m.cols();
  auto ech = row_echelon(m, rank_tol);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  Matrix<T> basis(cols, cols - ech.rank());
  std::size_t k = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = T(1);
    for (std::size_t i = 0; i < ech.rank(); ++i) basis(ech.pivots[i], k) = -ech.reduced(i, free);
    ++k;
  }
  return basis;
}

/// Inverse of a square matrix by Gauss-Jordan with partial pivoting; throws if singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& m, double rank_tol = 1e-9) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse: matrix is not square");
  const double scale = max_abs(m);
  Matrix<T> a = m;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      if (Tr::is_zero(a(i, k), scale, rank_tol)) continue;
      if constexpr (Tr::exact) {
        p = i;
        break;
      } else if (Tr::magnitude(a(i, k)) > best) {
        best = Tr::magnitude(a(i, k));
        p = i;
      }
    }
    if (p == n) throw std::invalid_argument("inverse: matrix is singular");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    const T piv = T(1) / a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= piv;
      inv(k, j) *= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || Tr::is_zero(a(i, k), 1.0, 0.0)) continue;
      const T f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Selects the listed columns of m, in the given order.
template <class T>
Matrix<T> select_columns(const Matrix<T>& m, std::span<const std::size_t> idx) {
  Matrix<T> out(m.rows(), idx.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = m(i, idx[k]);
  return out;
}

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = scalar_cast<To>(m(i, j));
  return out;
}

template <class To, class From>
Vector<To> vector_cast(const Vector<From>& v) {
  Vector<To> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(scalar_cast<To>(x));
  return out;
}

}  // namespace boxqp
