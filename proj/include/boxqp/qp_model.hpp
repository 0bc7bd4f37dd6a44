#pragma once

// Problem data for  max x^T Q x + q^T x  subject to  lower <= x <= upper.

#include <boxqp/matrix.hpp>

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace boxqp {

/// Raised for malformed instances; the message names the offending index.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
struct QpInstance {
  std::size_t n = 0;
  Matrix<T> Q;
  Vector<T> q;
  Vector<T> lower;
  Vector<T> upper;

  bool has_linear_term() const {
    for (const auto& c : q)
      if (!ScalarTraits<T>::is_zero(c, 1.0, 0.0)) return true;
    return false;
  }

  friend bool operator==(const QpInstance&, const QpInstance&) = default;
};

template <class T>
QpInstance<T> validate(QpInstance<T> inst) {
  const std::size_t n = inst.n;
  if (n == 0) throw InstanceError("dimension mismatch: n must be positive");
  if (inst.Q.rows() != n || inst.Q.cols() != n)
    throw InstanceError("dimension mismatch: Q is " + std::to_string(inst.Q.rows()) + "x" +
                        std::to_string(inst.Q.cols()) + ", expected " + std::to_string(n) + "x" +
                        std::to_string(n));
  auto check_len = [n](const Vector<T>& v, const char* what) {
    if (v.size() != n)
      throw InstanceError(std::string("dimension mismatch: ") + what + " has length " + std::to_string(v.size()) +
                          ", expected " + std::to_string(n));
  };
  check_len(inst.q, "q");
  check_len(inst.lower, "lower");
  check_len(inst.upper, "upper");

  if constexpr (!ScalarTraits<T>::exact) {
    auto finite = [](const T& v) { return std::isfinite(v); };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (!finite(inst.Q(i, j)))
          throw InstanceError("non-finite entry in Q at index (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (!finite(inst.q[i]) || !finite(inst.lower[i]) || !finite(inst.upper[i]))
        throw InstanceError("non-finite value at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (inst.lower[i] > inst.upper[i]) throw InstanceError("bound violation at index " + std::to_string(i));
  return inst;
}

/// f(x) = x^T Q x + q^T x in the instance's arithmetic.
template <class T>
T evaluate(const QpInstance<T>& inst, std::span<const T> x) {
  if (x.size() != inst.n)
    throw InstanceError("length mismatch: x has " + std::to_string(x.size()) + " entries, expected " +
                        std::to_string(inst.n));
  T value(0);
  for (std::size_t i = 0; i < inst.n; ++i) {
    T row(0);
    for (std::size_t j = 0; j < inst.n; ++j) row += inst.Q(i, j) * x[j];
    value += x[i] * (row + inst.q[i]);
  }
  return value;
}

template <class T>
T evaluate(const QpInstance<T>& inst, const Vector<T>& x) {
  return evaluate(inst, std::span<const T>(x));
}

template <class T>
bool within_bounds(const QpInstance<T>& inst, std::span<const T> x) {
  if (x.size() != inst.n) return false;
  for (std::size_t i = 0; i < inst.n; ++i)
    if (x[i] < inst.lower[i] || x[i] > inst.upper[i]) return false;
  return true;
}

template <class To, class From>
QpInstance<To> instance_cast(const QpInstance<From>& inst) {
  return {inst.n, matrix_cast<To>(inst.Q), vector_cast<To>(inst.q), vector_cast<To>(inst.lower),
          vector_cast<To>(inst.upper)};
}

/// Symmetric part (Q + Q^T) / 2.
template <class T>
Matrix<T> symmetric_part(const Matrix<T>& Q) {
  Matrix<T> S(Q.rows(), Q.cols());
  for (std::size_t i = 0; i < Q.rows(); ++i)
    for (std::size_t j = 0; j < Q.cols(); ++j) S(i, j) = (Q(i, j) + Q(j, i)) / T(2);
  return S;
}

}  // namespace boxqp
