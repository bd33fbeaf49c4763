// states.hpp — construction of product states and density matrices
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fermidicke/basis.hpp"
#include "fermidicke/sparse.hpp"

namespace fermidicke {

// Basis state |config> with the given mode occupations (vacuum by default).
inline StateVector basis_state(const BasisDescriptor& b, std::uint32_t config,
                               const std::vector<int>& occupations = {}) {
  if (config >= (std::uint32_t(1) << b.n_sites))
    throw std::invalid_argument("basis_state: config out of range");
  StateVector psi = StateVector::Zero(b.dim);
  const std::vector<int> occ =
      occupations.empty() ? std::vector<int>(b.n_modes(), 0) : occupations;
  psi[b.index_of(config, occ)] = 1.0;
  return psi;
}

inline StateVector all_parent_state(const BasisDescriptor& b) {
  return basis_state(b, 0u);
}

inline StateVector all_daughter_state(const BasisDescriptor& b) {
  return basis_state(b, (std::uint32_t(1) << b.n_sites) - 1u);
}

// Product of single-site superpositions (|daughter> + e^{i phase}|parent>)/sqrt(2)
// taken in ascending site order, with radiation modes in vacuum.  In the
// ordered-product representation used here the expansion coefficients carry
// no residual sign strings: the amplitude of |config> is just
// 2^{-N/2} * prod_{i parent} e^{i phase_i}.
inline StateVector product_superposition_state(const BasisDescriptor& b,
                                               const std::vector<double>& phases) {
  if (static_cast<int>(phases.size()) != b.n_sites)
    throw std::invalid_argument(
        "product_superposition_state: need one phase per site");
  StateVector psi = StateVector::Zero(b.dim);
  const double scale = std::pow(2.0, -0.5 * b.n_sites);
  for (std::uint32_t a = 0; a < b.atomic_dim; ++a) {
    double phase = 0.0;
    for (int i = 0; i < b.n_sites; ++i)
      if (!b.daughter_at(a, i)) phase += phases[i];
    psi[static_cast<std::int64_t>(a) * b.mode_dim] =
        scale * Complex(std::cos(phase), std::sin(phase));
  }
  psi.normalize();  // exact up to rounding; keeps the unit-norm contract tight
  return psi;
}

// Embeds a pure atomic state into the composite basis at fixed mode occupations.
inline StateVector embed_atomic_state(const BasisDescriptor& b,
                                      const StateVector& atomic,
                                      const std::vector<int>& occupations = {}) {
  if (atomic.size() != b.atomic_dim)
    throw std::invalid_argument("embed_atomic_state: atomic dimension mismatch");
  const std::vector<int> occ =
      occupations.empty() ? std::vector<int>(b.n_modes(), 0) : occupations;
  const std::int64_t mi = b.index_of(0u, occ) % b.mode_dim;
  StateVector psi = StateVector::Zero(b.dim);
  for (std::int64_t a = 0; a < b.atomic_dim; ++a)
    psi[a * b.mode_dim + mi] = atomic[a];
  return psi;
}

inline DenseMatrix density_from_state(const StateVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0))
    throw std::invalid_argument("density_from_state: zero state");
  return (psi * psi.adjoint()) / n2;
}

}  // namespace fermidicke
