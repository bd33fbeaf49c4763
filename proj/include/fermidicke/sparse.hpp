// sparse.hpp — sparse operator aliases and small exact linear-algebra helpers
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fermidicke {

using Complex = std::complex<double>;
using SparseOperator = Eigen::SparseMatrix<Complex>;
using StateVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

// Operators materialize densely only below this dimension; larger problems
// must stay in sparse or trace-based code paths.
inline constexpr std::int64_t kDenseCap = 4096;

inline SparseOperator identity_op(std::int64_t dim) {
  SparseOperator id(dim, dim);
  id.setIdentity();
  return id;
}

inline SparseOperator adjoint_of(const SparseOperator& a) {
  return SparseOperator(a.adjoint());
}

inline SparseOperator commutator(const SparseOperator& a,
                                 const SparseOperator& b) {
  return SparseOperator(a * b) - SparseOperator(b * a);
}

inline SparseOperator anticommutator(const SparseOperator& a,
                                     const SparseOperator& b) {
  return SparseOperator(a * b) + SparseOperator(b * a);
}

// Largest |entry| over stored entries.  Never prunes, so exact cancellations
// show up as stored zeros and the result is an honest max norm.
inline double max_abs_entry(const SparseOperator& a) {
  double best = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(a, k); it; ++it)
      best = std::max(best, std::abs(it.value()));
  return best;
}

inline DenseMatrix to_dense(const SparseOperator& a,
                            std::int64_t cap = kDenseCap) {
  if (a.rows() >= cap)
    throw std::length_error("to_dense: dimension " + std::to_string(a.rows()) +
                            " is not below the dense cap " + std::to_string(cap));
  return DenseMatrix(a);
}

inline StateVector apply(const SparseOperator& a, const StateVector& psi) {
  if (a.cols() != psi.size())
    throw std::invalid_argument("apply: operator/state dimension mismatch");
  return a * psi;
}

inline Complex expectation(const SparseOperator& a, const StateVector& psi) {
  return psi.dot(a * psi);  // Eigen's dot conjugates the left argument
}

}  // namespace fermidicke
