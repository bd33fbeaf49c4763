// site_operators.hpp — Jordan-Wigner faithful site and radiation-mode operators
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fermidicke/basis.hpp"
#include "fermidicke/sparse.hpp"

namespace fermidicke {

namespace detail {
inline void check_site(const BasisDescriptor& b, int site) {
  if (site < 0 || site >= b.n_sites)
    throw std::invalid_argument("site index out of range");
}
inline void check_mode(const BasisDescriptor& b, int m) {
  if (m < 0 || m >= b.n_modes())
    throw std::invalid_argument("mode index out of range");
}
}  // namespace detail

// Emission operator of one site: flips parent -> daughter, with the sign
// string (-1)^{#fermionic occupations at lower sites} demanded by the ordered
// product convention.  In the photonic reference case the string is empty.
// Site operators at different sites then anticommute exactly whenever a
// fermionic species is involved, with every cancellation bit-exact.
inline SparseOperator site_jump_operator(const BasisDescriptor& b, int site) {
  detail::check_site(b, site);
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(b.dim / 2));
  const std::uint32_t bit = 1u << site;
  for (std::uint32_t a = 0; a < b.atomic_dim; ++a) {
    if (a & bit) continue;  // site already decayed
    const std::uint32_t target = a | bit;
    const double sign = (b.fermions_below_site(a, site) & 1) ? -1.0 : 1.0;
    for (std::int64_t mi = 0; mi < b.mode_dim; ++mi)
      trips.emplace_back(static_cast<int>(target * b.mode_dim + mi),
                         static_cast<int>(a * b.mode_dim + mi), sign);
  }
  SparseOperator op(b.dim, b.dim);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

// Projector onto the undecayed (parent) occupation of one site; this is the
// n_i that enters both the excitation count and the dephasing jumps.
inline SparseOperator site_number_operator(const BasisDescriptor& b, int site) {
  detail::check_site(b, site);
  std::vector<Eigen::Triplet<Complex>> trips;
  const std::uint32_t bit = 1u << site;
  for (std::uint32_t a = 0; a < b.atomic_dim; ++a) {
    if (a & bit) continue;
    for (std::int64_t mi = 0; mi < b.mode_dim; ++mi) {
      const int idx = static_cast<int>(a * b.mode_dim + mi);
      trips.emplace_back(idx, idx, 1.0);
    }
  }
  SparseOperator op(b.dim, b.dim);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

// Total excitation count N_e = sum_i n_i (number of surviving parents).
inline SparseOperator excitation_number_operator(const BasisDescriptor& b) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(b.dim));
  for (std::int64_t idx = 0; idx < b.dim; ++idx)
    trips.emplace_back(static_cast<int>(idx), static_cast<int>(idx),
                       double(b.parent_count(b.atomic_config(idx))));
  SparseOperator op(b.dim, b.dim);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

// Annihilation operator of radiation mode m.  A fermionic mode inherits the
// parity of every atomic fermion and of all earlier modes, so that mode and
// site operators anticommute; a bosonic mode carries the usual sqrt(n)
// amplitudes and no string.
inline SparseOperator mode_annihilation_operator(const BasisDescriptor& b, int m) {
  detail::check_mode(b, m);
  const bool fermionic = emits_fermion(b.stats);
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(b.dim / 2));
  for (std::int64_t idx = 0; idx < b.dim; ++idx) {
    const int occ = b.mode_occupation(idx, m);
    if (occ == 0) continue;
    double amp = std::sqrt(double(occ));
    if (fermionic) {
      int string = b.atomic_fermion_count(b.atomic_config(idx));
      for (int prev = 0; prev < m; ++prev) string += b.mode_occupation(idx, prev);
      if (string & 1) amp = -amp;
    }
    trips.emplace_back(static_cast<int>(idx - b.mode_strides[m]),
                       static_cast<int>(idx), amp);
  }
  SparseOperator op(b.dim, b.dim);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

// Occupation number of radiation mode m.
inline SparseOperator mode_number_operator(const BasisDescriptor& b, int m) {
  detail::check_mode(b, m);
  std::vector<Eigen::Triplet<Complex>> trips;
  for (std::int64_t idx = 0; idx < b.dim; ++idx) {
    const int occ = b.mode_occupation(idx, m);
    if (occ > 0)
      trips.emplace_back(static_cast<int>(idx), static_cast<int>(idx), double(occ));
  }
  SparseOperator op(b.dim, b.dim);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

// Sum of site emission operators weighted by arbitrary complex amplitudes.
inline SparseOperator weighted_jump_operator(const BasisDescriptor& b,
                                             const Eigen::VectorXcd& weights) {
  if (weights.size() != b.n_sites)
    throw std::invalid_argument("weighted_jump_operator: need one weight per site");
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(b.dim / 2) * b.n_sites);
  for (int site = 0; site < b.n_sites; ++site) {
    const Complex w = weights[site];
    if (w == Complex(0.0, 0.0)) continue;
    const std::uint32_t bit = 1u << site;
    for (std::uint32_t a = 0; a < b.atomic_dim; ++a) {
      if (a & bit) continue;
      const std::uint32_t target = a | bit;
      const Complex v = (b.fermions_below_site(a, site) & 1) ? -w : w;
      for (std::int64_t mi = 0; mi < b.mode_dim; ++mi)
        trips.emplace_back(static_cast<int>(target * b.mode_dim + mi),
                           static_cast<int>(a * b.mode_dim + mi), v);
    }
  }
  SparseOperator op(b.dim, b.dim);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

}  // namespace fermidicke
