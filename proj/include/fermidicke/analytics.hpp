// analytics.hpp — closed-form emission rates for product initial states
#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "fermidicke/sparse.hpp"
#include "fermidicke/statistics.hpp"

namespace fermidicke {

// Rate of the boson-parent / fermion-daughter chain prepared in the linear
// phase profile alpha_j = j * phi:
//   R = Gamma0 [ (N-1)/2 (1 - cos phi) + 1/2 ].
// Neighbour coherences are the only survivors of the string algebra, so a
// uniform phase gradient of pi maximizes the rate and phi = 0 nearly
// extinguishes it.
inline double rate_fermionic_product_state(int n, double gamma0, double phi) {
  if (n < 1) throw std::invalid_argument("rate_fermionic_product_state: n >= 1");
  return gamma0 * (0.5 * (n - 1) * (1.0 - std::cos(phi)) + 0.5);
}

// Fermion-parent / boson-daughter chain, same preparation; the neighbour
// term enters with the opposite sign:
//   R = Gamma0 [ (N-1)/2 (1 + cos phi) + 1/2 ].
inline double rate_fermion_parent_product_state(int n, double gamma0, double phi) {
  if (n < 1)
    throw std::invalid_argument("rate_fermion_parent_product_state: n >= 1");
  return gamma0 * (0.5 * (n - 1) * (1.0 + std::cos(phi)) + 0.5);
}

// Photonic reference chain at uniform phases: R = Gamma0 N (N+1) / 4,
// the superradiant benchmark the fermionic chains are measured against.
inline double rate_bosonic_product_state(int n, double gamma0) {
  if (n < 1) throw std::invalid_argument("rate_bosonic_product_state: n >= 1");
  return gamma0 * double(n) * double(n + 1) / 4.0;
}

// Two-point correlation <e_i^d e_j> in a product superposition state with
// per-site phases alpha.  The emission rate is Gamma0 times the sum over all
// pairs.  Fermionic statistics truncate the coherence to nearest neighbours;
// the photonic case keeps every pair.
inline Complex correlation_element(int i, int j,
                                   const std::vector<double>& phases,
                                   StatisticsConfig stats =
                                       StatisticsConfig::boson_to_fermion) {
  const int n = static_cast<int>(phases.size());
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::invalid_argument("correlation_element: site index out of range");
  const double d = phases[j] - phases[i];
  const Complex coh(std::cos(d) / 4.0, std::sin(d) / 4.0);
  switch (stats) {
    case StatisticsConfig::boson_to_fermion:
      if (i == j) return Complex(0.5, 0.0);
      return std::abs(i - j) == 1 ? -coh : Complex(0.0, 0.0);
    case StatisticsConfig::fermion_to_boson:
      if (i == j) return Complex(0.5, 0.0);
      return std::abs(i - j) == 1 ? coh : Complex(0.0, 0.0);
    case StatisticsConfig::boson_to_boson:
      return i == j ? Complex(0.5, 0.0) : coh;
  }
  throw std::logic_error("correlation_element: unreachable");
}

// Closed-form rate for arbitrary per-site phases, Gamma0 * sum_ij <e_i^d e_j>.
// The imaginary parts cancel pairwise, so only real parts are accumulated.
inline double closed_form_rate(StatisticsConfig stats,
                               const std::vector<double>& phases,
                               double gamma0) {
  const int n = static_cast<int>(phases.size());
  if (n < 1) throw std::invalid_argument("closed_form_rate: need >= 1 phase");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += correlation_element(i, i, phases, stats).real();
    for (int j = i + 1; j < n; ++j)
      sum += 2.0 * correlation_element(i, j, phases, stats).real();
  }
  return gamma0 * sum;
}

// Numerical rate <psi| L^d L |psi> = ||L psi||^2 for a normalized state.
inline double rate_numeric(const SparseOperator& jump, const StateVector& psi) {
  if (jump.cols() != psi.size())
    throw std::invalid_argument("rate_numeric: dimension mismatch");
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw std::invalid_argument("rate_numeric: zero state");
  return (jump * psi).squaredNorm() / n2;
}

// Largest decay rate any state can reach when the emitted quantum is a
// fermion: the top of the two-valued L^d L spectrum, N Gamma0.
inline double max_rate_bound(int n, double gamma0) {
  if (n < 1) throw std::invalid_argument("max_rate_bound: n >= 1");
  return double(n) * gamma0;
}

}  // namespace fermidicke
