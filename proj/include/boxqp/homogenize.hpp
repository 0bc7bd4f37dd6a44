#pragma once

// Folds the linear term into the quadratic form with one extra variable w
// pinned to [1, 1]:  Q' = [[Q, q/2], [q^T/2, 0]].

#include <boxqp/qp_model.hpp>

#include <stdexcept>

namespace boxqp {

template <class T>
struct HomogenizedInstance {
  QpInstance<T> inner;
  std::size_t original_n = 0;
  bool was_homogenized = false;
};

template <class T>
HomogenizedInstance<T> hide_linear_term(const QpInstance<T>& inst) {
  if (!inst.has_linear_term()) return {inst, inst.n, false};

  const std::size_t n = inst.n;
  QpInstance<T> out;
  out.n = n + 1;
  out.Q = Matrix<T>(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.Q(i, j) = inst.Q(i, j);
    out.Q(i, n) = inst.q[i] / T(2);
    out.Q(n, i) = inst.q[i] / T(2);
  }
  out.q.assign(n + 1, T(0));
  out.lower = inst.lower;
  out.lower.push_back(T(1));
  out.upper = inst.upper;
  out.upper.push_back(T(1));
  return {std::move(out), n, true};
}

/// Maps a point of the homogenized problem back to the original variables.
/// A last coordinate other than 1 means the solver produced an infeasible point.
template <class T>
Vector<T> project_solution(const HomogenizedInstance<T>& h, const Vector<T>& x_prime, double tol = 1e-8) {
  if (!h.was_homogenized) {
    if (x_prime.size() != h.original_n) throw std::logic_error("project_solution: length mismatch");
    return x_prime;
  }
  if (x_prime.size() != h.original_n + 1) throw std::logic_error("project_solution: length mismatch");
  const T& w = x_prime.back();
  if (!ScalarTraits<T>::is_zero(T(w - T(1)), 1.0, tol))
    throw std::logic_error("project_solution: auxiliary coordinate is " + ScalarTraits<T>::to_string(w) +
                           ", expected 1");
  return Vector<T>(x_prime.begin(), x_prime.end() - 1);
}

}  // namespace boxqp
