// trajectory.hpp — observable time series and their serialization
#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fermidicke {

// Shortest fixed-width float form that round-trips a double (17 significant
// digits); used for every numeric field the CLI writes so identical runs
// produce identical bytes.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Observables sampled on the output grid.  The five leading columns are the
// serialization contract; the remaining vectors are engine diagnostics and
// stay empty when an engine does not produce them.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> n_c;       // bright-mode population <C^d C>
  std::vector<double> n_nu;      // radiation-mode occupation
  std::vector<double> n_bar;     // mean site excitation
  std::vector<double> emitted;   // integral of kappa * n_nu

  // moment-engine extras
  std::vector<double> re_coh;    // Re <C^d nu>
  std::vector<double> im_coh;    // -Im <C^d nu>

  // density-engine checkpoint diagnostics
  std::vector<double> min_eigenvalue;        // NaN where the check was skipped
  std::vector<double> hermiticity_residual;  // max |rho - rho^d|
  std::vector<double> trace_residual;        // |tr rho - 1| before rescaling

  std::size_t size() const { return times.size(); }
};

inline void write_trajectory_csv(const Trajectory& tr, std::ostream& os) {
  os << "t,n_C,n_nu,n_bar,emitted\n";
  for (std::size_t i = 0; i < tr.size(); ++i)
    os << format_g17(tr.times[i]) << ',' << format_g17(tr.n_c[i]) << ','
       << format_g17(tr.n_nu[i]) << ',' << format_g17(tr.n_bar[i]) << ','
       << format_g17(tr.emitted[i]) << '\n';
}

inline nlohmann::json trajectory_to_json(const Trajectory& tr) {
  nlohmann::json j;
  j["t"] = tr.times;
  j["n_C"] = tr.n_c;
  j["n_nu"] = tr.n_nu;
  j["n_bar"] = tr.n_bar;
  j["emitted"] = tr.emitted;
  return j;
}

// Cumulative emitted count recorded by an evolution engine; validates the
// monotonicity a counting observable must satisfy.
inline const std::vector<double>& emission_count(const Trajectory& tr,
                                                 double slack = 1e-9) {
  for (std::size_t i = 1; i < tr.emitted.size(); ++i)
    if (tr.emitted[i] + slack < tr.emitted[i - 1])
      throw std::runtime_error(
          "emission_count: cumulative count decreased at sample " +
          std::to_string(i));
  return tr.emitted;
}

}  // namespace fermidicke
