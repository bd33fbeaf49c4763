// basis.hpp — composite basis bookkeeping for N two-level sites plus radiation modes
#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermidicke/statistics.hpp"

namespace fermidicke {

inline constexpr int kMaxSites = 16;
inline constexpr std::int64_t kDefaultDimCap = std::int64_t(1) << 22;

// Index bookkeeping for the tensor product of N two-level sites and M
// radiation modes.  A basis state is the ordered product of site operators
// (site 0 leftmost) acting on the vacuum, followed by mode operators (mode 0
// first); all Jordan-Wigner sign conventions in the operator builders refer
// to that ordering.  Atomic occupations are packed into a bit mask with
// bit i = 1 when site i holds the daughter, so the all-parent state is mask 0.
// The flat index is atomic_config * mode_dim + mode_index with mode 0 the
// most significant digit of the mixed-radix mode_index.
struct BasisDescriptor {
  StatisticsConfig stats = StatisticsConfig::boson_to_fermion;
  int n_sites = 0;
  std::vector<int> mode_capacities;    // max quanta per radiation mode
  std::vector<std::int64_t> mode_strides;
  std::int64_t atomic_dim = 0;
  std::int64_t mode_dim = 0;
  std::int64_t dim = 0;

  int n_modes() const { return static_cast<int>(mode_capacities.size()); }

  std::int64_t index_of(std::uint32_t config,
                        const std::vector<int>& occupations) const {
    if (static_cast<int>(occupations.size()) != n_modes())
      throw std::invalid_argument("index_of: occupation list length mismatch");
    std::int64_t mi = 0;
    for (int m = 0; m < n_modes(); ++m) {
      if (occupations[m] < 0 || occupations[m] > mode_capacities[m])
        throw std::invalid_argument("index_of: mode occupation out of range");
      mi += occupations[m] * mode_strides[m];
    }
    return static_cast<std::int64_t>(config) * mode_dim + mi;
  }

  std::uint32_t atomic_config(std::int64_t index) const {
    return static_cast<std::uint32_t>(index / mode_dim);
  }

  std::int64_t mode_index(std::int64_t index) const { return index % mode_dim; }

  int mode_occupation(std::int64_t index, int m) const {
    return static_cast<int>((index % mode_dim) / mode_strides[m] %
                            (mode_capacities[m] + 1));
  }

  bool daughter_at(std::uint32_t config, int site) const {
    return (config >> site) & 1u;
  }

  int daughter_count(std::uint32_t config) const {
    return std::popcount(config);
  }

  // Number of sites still holding the parent; the conserved excitation count.
  int parent_count(std::uint32_t config) const {
    return n_sites - std::popcount(config);
  }

  // How many site occupations below `site` are fermionic: the Jordan-Wigner
  // string length seen by an operator acting at `site`.
  int fermions_below_site(std::uint32_t config, int site) const {
    const std::uint32_t below = config & ((1u << site) - 1u);
    switch (stats) {
      case StatisticsConfig::boson_to_fermion: return std::popcount(below);
      case StatisticsConfig::fermion_to_boson: return site - std::popcount(below);
      case StatisticsConfig::boson_to_boson:   return 0;
    }
    throw std::logic_error("fermions_below_site: unreachable");
  }

  // Total fermionic site occupation, the parity seen by mode operators.
  int atomic_fermion_count(std::uint32_t config) const {
    switch (stats) {
      case StatisticsConfig::boson_to_fermion: return std::popcount(config);
      case StatisticsConfig::fermion_to_boson: return n_sites - std::popcount(config);
      case StatisticsConfig::boson_to_boson:   return 0;
    }
    throw std::logic_error("atomic_fermion_count: unreachable");
  }
};

// Builds the descriptor for N sites and M radiation modes.  Fermionic modes
// hold at most one quantum; bosonic modes default to capacity N (enough to
// absorb every emittable quantum) unless mode_capacity overrides it.
inline BasisDescriptor build_basis(int n_sites, int n_modes,
                                   StatisticsConfig stats,
                                   int mode_capacity = -1,
                                   std::int64_t dim_cap = kDefaultDimCap) {
  if (n_sites < 1 || n_sites > kMaxSites)
    throw std::invalid_argument("build_basis: n_sites must be in [1, " +
                                std::to_string(kMaxSites) + "]");
  if (n_modes < 0 || n_modes > n_sites)
    throw std::invalid_argument("build_basis: n_modes must be in [0, n_sites]");

  BasisDescriptor b;
  b.stats = stats;
  b.n_sites = n_sites;
  b.atomic_dim = std::int64_t(1) << n_sites;

  const int default_cap = emits_fermion(stats) ? 1 : n_sites;
  const int cap = mode_capacity < 0 ? default_cap : mode_capacity;
  if (cap < 1) throw std::invalid_argument("build_basis: mode capacity must be >= 1");
  if (emits_fermion(stats) && cap != 1)
    throw std::invalid_argument("build_basis: fermionic modes hold at most one quantum");

  b.mode_capacities.assign(n_modes, cap);
  b.mode_strides.assign(n_modes, 1);
  b.mode_dim = 1;
  for (int m = n_modes - 1; m >= 0; --m) {
    b.mode_strides[m] = b.mode_dim;
    b.mode_dim *= cap + 1;
    if (b.mode_dim > dim_cap)
      throw std::length_error("build_basis: dimension exceeds cap " +
                              std::to_string(dim_cap));
  }
  b.dim = b.atomic_dim * b.mode_dim;
  if (b.dim > dim_cap)
    throw std::length_error("build_basis: dimension " + std::to_string(b.dim) +
                            " exceeds cap " + std::to_string(dim_cap));
  return b;
}

}  // namespace fermidicke
