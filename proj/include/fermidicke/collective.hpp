// collective.hpp — collective jump operators and bright/dark state classification
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fermidicke/basis.hpp"
#include "fermidicke/site_operators.hpp"
#include "fermidicke/sparse.hpp"

namespace fermidicke {

// Collective emission operator L = sqrt(N Gamma0) * (1/sqrt(N)) sum_i e_i.
// For a fermionic emitted quantum L is nilpotent, L^2 = 0 with every
// cancellation exact in floating point, because the two paths that populate
// any doubly-decayed configuration differ by one string crossing.
inline SparseOperator collective_jump(const BasisDescriptor& b, double gamma0) {
  if (!(gamma0 > 0.0))
    throw std::invalid_argument("collective_jump: gamma0 must be positive");
  const Complex w(std::sqrt(gamma0), 0.0);
  return weighted_jump_operator(b, Eigen::VectorXcd::Constant(b.n_sites, w));
}

// Collective mode operator T_k = (1/sqrt(N)) sum_j exp(2 pi i j k / N) e_j.
// T_0 is the bright mode; the N operators form an orthonormal family.
inline SparseOperator collective_mode_operator(const BasisDescriptor& b, int k) {
  if (k < 0 || k >= b.n_sites)
    throw std::invalid_argument("collective_mode_operator: k out of range");
  Eigen::VectorXcd w(b.n_sites);
  const double scale = 1.0 / std::sqrt(double(b.n_sites));
  for (int j = 0; j < b.n_sites; ++j) {
    const double arg = 2.0 * std::numbers::pi * double(j) * double(k) / double(b.n_sites);
    w[j] = scale * Complex(std::cos(arg), std::sin(arg));
  }
  return weighted_jump_operator(b, w);
}

// Largest |entry| of L^2; exactly zero for a faithful fermionic collective jump.
inline double nilpotency_check(const SparseOperator& jump) {
  return max_abs_entry(SparseOperator(jump * jump));
}

struct EigenvalueGroup {
  double value = 0.0;
  std::int64_t multiplicity = 0;
};

// Result of diagnosing L^dagger L.  Below the dense cap the eigenbasis is
// materialized: bright columns span the emitting eigenvalue N Gamma0, dark
// columns the kernel.  When the spectrum is exactly two-valued the dark
// columns are the canonical partners L|bright>/sqrt(N Gamma0), a bijection
// because the range of a nilpotent L lies inside its kernel.  At or above the
// cap only eigenvalue bookkeeping derived from traces is available.
struct Classification {
  double collective_rate = 0.0;  // reference scale N Gamma0
  std::vector<EigenvalueGroup> groups;  // ascending eigenvalue
  std::int64_t bright_count = 0;
  std::int64_t dark_count = 0;
  std::int64_t other_count = 0;
  bool two_valued = false;  // spectrum is exactly {0, N Gamma0}
  bool has_vectors = false;
  bool paired = false;      // dark columns are the partners of bright columns
  Eigen::MatrixXcd bright;  // one eigenvector per column
  Eigen::MatrixXcd dark;
  Eigen::MatrixXcd other;
};

inline Classification classify_states(const SparseOperator& jump,
                                      double collective_rate,
                                      double tol_rel = 1e-9,
                                      std::int64_t dense_cap = kDenseCap) {
  if (jump.rows() != jump.cols())
    throw std::invalid_argument("classify_states: operator must be square");
  if (!(collective_rate > 0.0))
    throw std::invalid_argument("classify_states: collective rate must be positive");
  const double tol = tol_rel * collective_rate;
  const std::int64_t dim = jump.rows();
  Classification out;
  out.collective_rate = collective_rate;

  const SparseOperator gram = SparseOperator(adjoint_of(jump) * jump);

  if (dim < dense_cap) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(to_dense(gram, dense_cap));
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("classify_states: eigensolver failed to converge");
    const Eigen::VectorXd vals = solver.eigenvalues();

    // Group the sorted spectrum; a gap larger than tol starts a new group.
    std::int64_t start = 0;
    for (std::int64_t i = 1; i <= dim; ++i) {
      if (i == dim || vals[i] - vals[i - 1] > tol) {
        const double rep = vals.segment(start, i - start).mean();
        out.groups.push_back({rep, i - start});
        start = i;
      }
    }

    std::vector<std::int64_t> bright_idx, dark_idx, other_idx;
    for (std::int64_t i = 0; i < dim; ++i) {
      if (std::abs(vals[i]) <= tol) dark_idx.push_back(i);
      else if (std::abs(vals[i] - collective_rate) <= tol) bright_idx.push_back(i);
      else other_idx.push_back(i);
    }
    out.bright_count = static_cast<std::int64_t>(bright_idx.size());
    out.dark_count = static_cast<std::int64_t>(dark_idx.size());
    out.other_count = static_cast<std::int64_t>(other_idx.size());
    out.two_valued = out.other_count == 0 &&
                     out.bright_count + out.dark_count == dim;

    out.has_vectors = true;
    out.bright.resize(dim, out.bright_count);
    out.dark.resize(dim, out.dark_count);
    out.other.resize(dim, out.other_count);
    for (std::int64_t c = 0; c < out.bright_count; ++c)
      out.bright.col(c) = solver.eigenvectors().col(bright_idx[c]);
    for (std::int64_t c = 0; c < out.other_count; ++c)
      out.other.col(c) = solver.eigenvectors().col(other_idx[c]);

    if (out.two_valued && out.bright_count == out.dark_count) {
      // Canonical pairing: each dark partner is the bright state after one
      // collective emission.
      const double scale = 1.0 / std::sqrt(collective_rate);
      for (std::int64_t c = 0; c < out.bright_count; ++c) {
        StateVector d = scale * (jump * StateVector(out.bright.col(c)));
        const double n = d.norm();
        if (std::abs(n - 1.0) > 1e-6)
          throw std::runtime_error(
              "classify_states: dark partner norm " + std::to_string(n) +
              " deviates from 1; pairing is inconsistent");
        out.dark.col(c) = d / n;
      }
      out.paired = true;
    } else {
      for (std::int64_t c = 0; c < out.dark_count; ++c)
        out.dark.col(c) = solver.eigenvectors().col(dark_idx[c]);
    }
    return out;
  }

  // Trace-based bookkeeping for large dimensions: valid only when the
  // spectrum is exactly two-valued, which the minimal-polynomial residual
  // (L^d L)^2 = N Gamma0 (L^d L) certifies without any eigensolve.
  const SparseOperator residual =
      SparseOperator(gram * gram) - SparseOperator(collective_rate * gram);
  if (max_abs_entry(residual) > tol * collective_rate)
    throw std::runtime_error(
        "classify_states: spectrum is not two-valued and the dimension " +
        std::to_string(dim) + " is at or above the dense cap " +
        std::to_string(dense_cap));
  double trace = 0.0;
  for (int k = 0; k < gram.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(gram, k); it; ++it)
      if (it.row() == it.col()) trace += it.value().real();
  out.bright_count = std::llround(trace / collective_rate);
  out.dark_count = dim - out.bright_count;
  out.two_valued = true;
  out.groups.push_back({0.0, out.dark_count});
  out.groups.push_back({collective_rate, out.bright_count});
  return out;
}

struct ExcitationRow {
  int excitations = 0;       // number of surviving parents in the block
  std::int64_t block_dim = 0;
  std::int64_t bright = 0;
  std::int64_t dark = 0;
  std::int64_t other = 0;
};

// Classification resolved by the conserved excitation count.  L^d L commutes
// with N_e exactly (no matrix element connects different parent counts), so
// each block diagonalizes independently.
inline std::vector<ExcitationRow> excitation_resolved_classification(
    const SparseOperator& jump, const BasisDescriptor& b, double collective_rate,
    double tol_rel = 1e-9) {
  if (b.n_modes() != 0)
    throw std::invalid_argument(
        "excitation_resolved_classification: atomic-only basis required");
  if (jump.rows() != b.dim)
    throw std::invalid_argument(
        "excitation_resolved_classification: operator/basis dimension mismatch");
  const double tol = tol_rel * collective_rate;
  const SparseOperator gram = SparseOperator(adjoint_of(jump) * jump);
  if (max_abs_entry(commutator(gram, excitation_number_operator(b))) != 0.0)
    throw std::runtime_error(
        "excitation_resolved_classification: L^d L does not commute with the "
        "excitation count");

  const DenseMatrix dense_gram = to_dense(gram);
  std::vector<ExcitationRow> rows;
  for (int ne = 0; ne <= b.n_sites; ++ne) {
    std::vector<std::int64_t> idx;
    for (std::int64_t i = 0; i < b.dim; ++i)
      if (b.parent_count(b.atomic_config(i)) == ne) idx.push_back(i);
    DenseMatrix block(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        block(r, c) = dense_gram(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(block,
                                                      Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error(
          "excitation_resolved_classification: eigensolver failed");
    ExcitationRow row;
    row.excitations = ne;
    row.block_dim = static_cast<std::int64_t>(idx.size());
    for (std::int64_t i = 0; i < row.block_dim; ++i) {
      const double v = solver.eigenvalues()[i];
      if (std::abs(v) <= tol) ++row.dark;
      else if (std::abs(v - collective_rate) <= tol) ++row.bright;
      else ++row.other;
    }
    rows.push_back(row);
  }
  return rows;
}

// Population of the emission-enabling collective mode, n_0 = <T_0^d T_0>.
// The decay rate of |psi> is N Gamma0 times this number.
inline double bright_mode_population(const BasisDescriptor& b,
                                     const StateVector& psi) {
  if (psi.size() != b.dim)
    throw std::invalid_argument("bright_mode_population: dimension mismatch");
  const double n2 = psi.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-9)
    throw std::invalid_argument("bright_mode_population: state must be normalized");
  return (collective_mode_operator(b, 0) * psi).squaredNorm() / n2;
}

}  // namespace fermidicke
