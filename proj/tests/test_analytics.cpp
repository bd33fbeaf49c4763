// test_analytics.cpp — closed-form rate formulas against operator numerics
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fermidicke/analytics.hpp"
#include "fermidicke/basis.hpp"
#include "fermidicke/collective.hpp"
#include "fermidicke/site_operators.hpp"
#include "fermidicke/states.hpp"

using namespace fermidicke;

namespace {

const double kPi = std::numbers::pi;

std::vector<double> linear_profile(int n, double phi) {
  std::vector<double> phases(n);
  for (int j = 0; j < n; ++j) phases[j] = j * phi;
  return phases;
}

const StatisticsConfig kAllStats[] = {StatisticsConfig::boson_to_fermion,
                                      StatisticsConfig::fermion_to_boson,
                                      StatisticsConfig::boson_to_boson};

}  // namespace

TEST_CASE("pinned rates at the extremal phase profiles", "[analytics]") {
  const double g0 = 2.0;
  // uniform phases suppress fermion-daughter emission down to the floor
  CHECK(rate_fermionic_product_state(6, g0, 0.0) == Catch::Approx(0.5 * g0));
  // an alternating profile recovers nearly the full collective rate
  CHECK(rate_fermionic_product_state(6, g0, kPi) == Catch::Approx(5.5 * g0));
  // fermionic parents mirror the dependence
  CHECK(rate_fermion_parent_product_state(6, g0, 0.0) == Catch::Approx(5.5 * g0));
  CHECK(rate_fermion_parent_product_state(6, g0, kPi) == Catch::Approx(0.5 * g0));
  // photonic benchmark grows quadratically
  CHECK(rate_bosonic_product_state(4, g0) == Catch::Approx(5.0 * g0));
  CHECK(rate_bosonic_product_state(1, g0) == Catch::Approx(0.5 * g0));
  // single site: all three chains emit at half the bare rate
  CHECK(rate_fermionic_product_state(1, g0, 1.234) == Catch::Approx(0.5 * g0));
  CHECK(rate_fermion_parent_product_state(1, g0, 1.234) == Catch::Approx(0.5 * g0));
}

TEST_CASE("closed-form rate matches the linear-profile formulas", "[analytics]") {
  for (int n : {1, 2, 3, 5, 8}) {
    for (double phi : {0.0, 0.3, kPi / 2, kPi, -1.7}) {
      const auto phases = linear_profile(n, phi);
      CHECK(closed_form_rate(StatisticsConfig::boson_to_fermion, phases, 1.4) ==
            Catch::Approx(rate_fermionic_product_state(n, 1.4, phi)));
      CHECK(closed_form_rate(StatisticsConfig::fermion_to_boson, phases, 1.4) ==
            Catch::Approx(rate_fermion_parent_product_state(n, 1.4, phi)));
    }
    const auto uniform = linear_profile(n, 0.0);
    CHECK(closed_form_rate(StatisticsConfig::boson_to_boson, uniform, 1.4) ==
          Catch::Approx(rate_bosonic_product_state(n, 1.4)));
  }
}

TEST_CASE("closed-form rate equals the operator rate for random phases",
          "[analytics]") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  const double g0 = 0.8;
  for (auto stats : kAllStats) {
    for (int n = 2; n <= 7; ++n) {
      const BasisDescriptor b = build_basis(n, 0, stats);
      const SparseOperator jump = collective_jump(b, g0);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> phases(n);
        for (double& p : phases) p = phase(rng);
        const StateVector psi = product_superposition_state(b, phases);
        const double closed = closed_form_rate(stats, phases, g0);
        const double numeric = rate_numeric(jump, psi);
        CHECK(std::abs(closed - numeric) < 1e-12 * n * g0);
      }
    }
  }
}

TEST_CASE("correlation elements: hermiticity, range, operator expectation",
          "[analytics]") {
  std::mt19937 rng(7171);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::vector<double> phases(4);
  for (double& p : phases) p = phase(rng);

  for (auto stats : kAllStats) {
    const BasisDescriptor b = build_basis(4, 0, stats);
    const StateVector psi = product_superposition_state(b, phases);
    std::vector<SparseOperator> e;
    for (int i = 0; i < 4; ++i) e.push_back(site_jump_operator(b, i));
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const Complex kij = correlation_element(i, j, phases, stats);
        const Complex kji = correlation_element(j, i, phases, stats);
        CHECK(std::abs(kij - std::conj(kji)) < 1e-15);
        if (has_fermionic_sites(stats) || emits_fermion(stats)) {
          if (std::abs(i - j) > 1) CHECK(kij == Complex(0.0, 0.0));
        }
        const Complex measured =
            expectation(SparseOperator(adjoint_of(e[i]) * e[j]), psi);
        CHECK(std::abs(kij - measured) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(correlation_element(0, 4, phases), std::invalid_argument);
  CHECK_THROWS_AS(correlation_element(-1, 0, phases), std::invalid_argument);
}

TEST_CASE("no state beats the collective-rate ceiling", "[analytics]") {
  std::mt19937 rng(31337);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double g0 = 1.1;
  for (auto stats : {StatisticsConfig::boson_to_fermion,
                     StatisticsConfig::fermion_to_boson}) {
    const BasisDescriptor b = build_basis(5, 0, stats);
    const SparseOperator jump = collective_jump(b, g0);
    const double bound = max_rate_bound(5, g0);

    // the ceiling is attained: it is the top of the spectrum
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(
        to_dense(SparseOperator(adjoint_of(jump) * jump)));
    CHECK(solver.eigenvalues().maxCoeff() == Catch::Approx(bound));

    for (int trial = 0; trial < 25; ++trial) {
      StateVector psi(b.dim);
      for (std::int64_t i = 0; i < b.dim; ++i)
        psi[i] = Complex(gauss(rng), gauss(rng));
      CHECK(rate_numeric(jump, psi) <= bound + 1e-9);
    }
  }
}

TEST_CASE("analytics argument validation", "[analytics]") {
  CHECK_THROWS_AS(rate_fermionic_product_state(0, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(rate_bosonic_product_state(-3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(max_rate_bound(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_rate(StatisticsConfig::boson_to_fermion, {}, 1.0),
                  std::invalid_argument);
  const BasisDescriptor b = build_basis(2, 0, StatisticsConfig::boson_to_fermion);
  const SparseOperator jump = collective_jump(b, 1.0);
  CHECK_THROWS_AS(rate_numeric(jump, StateVector::Zero(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(rate_numeric(jump, StateVector::Zero(4)),
                  std::invalid_argument);
}
