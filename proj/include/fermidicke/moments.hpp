// moments.hpp — closed moment dynamics, analytic limits, and regime labels
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fermidicke/ode.hpp"
#include "fermidicke/trajectory.hpp"

namespace fermidicke {

// Physical parameters of the cavity-mediated model: N sites coupled with
// strength g to one lossy radiation mode (loss kappa), plus optional local
// dephasing kappa_phi.  The effective single-site emission rate after
// adiabatic elimination is gamma0 = 4 g^2 / kappa.
struct ModelParams {
  int n_sites = 1;
  double g = 0.0;
  double kappa = 0.0;
  double kappa_phi = 0.0;

  void validate() const {
    if (n_sites < 1) throw std::invalid_argument("ModelParams: n_sites >= 1");
    if (g < 0.0 || kappa < 0.0 || kappa_phi < 0.0)
      throw std::invalid_argument("ModelParams: rates must be non-negative");
  }
  double collective_coupling() const { return g * std::sqrt(double(n_sites)); }
  double gamma0() const {
    if (!(kappa > 0.0))
      throw std::invalid_argument("ModelParams: gamma0 requires kappa > 0");
    return 4.0 * g * g / kappa;
  }
  double collective_rate() const { return n_sites * gamma0(); }
};

// First moments that close exactly under the collective coupling: the
// nilpotency C^2 = 0 and the exact anticommutator {C, C^d} = 1 collapse every
// commutator into the same small set of expectation values, so these are
// exact equations of motion, not a truncation.
struct MomentState {
  double n_c = 0.0;    // <C^d C>
  double n_nu = 0.0;   // <nu^d nu>
  double r = 0.0;      // Re <C^d nu>
  double u = 0.0;      // -Im <C^d nu>
  double n_bar = 0.0;  // (1/N) sum_i <n_i>
};

// Cavity-only subset (no dephasing): four coupled moments.
struct CavityMoments {
  double n_c = 0.0;
  double n_nu = 0.0;
  double r = 0.0;
  double u = 0.0;
};

inline CavityMoments moment_rhs_cavity(const CavityMoments& m,
                                       const ModelParams& p) {
  p.validate();
  if (p.kappa_phi != 0.0)
    throw std::invalid_argument("moment_rhs_cavity: requires kappa_phi == 0");
  const double om = p.collective_coupling();
  CavityMoments d;
  d.n_c = -2.0 * om * m.u;
  d.n_nu = 2.0 * om * m.u - p.kappa * m.n_nu;
  d.r = -0.5 * p.kappa * m.r;
  d.u = om * (m.n_c - m.n_nu) - 0.5 * p.kappa * m.u;
  return d;
}

// Full five-moment system with local dephasing.  Dephasing jumps are
// projectors, so they feed n_c back toward the incoherent mean n_bar and damp
// the coherences at (kappa + kappa_phi)/2 without opening the hierarchy.
inline MomentState moment_rhs_dephasing(const MomentState& m,
                                        const ModelParams& p) {
  p.validate();
  const double om = p.collective_coupling();
  const double damp = 0.5 * (p.kappa + p.kappa_phi);
  MomentState d;
  d.n_c = -2.0 * om * m.u - p.kappa_phi * (m.n_c - m.n_bar);
  d.n_nu = 2.0 * om * m.u - p.kappa * m.n_nu;
  d.r = -damp * m.r;
  d.u = om * (m.n_c - m.n_nu) - damp * m.u;
  d.n_bar = -2.0 * om * m.u / double(p.n_sites);
  return d;
}

enum class CavityRegime { lossless, weak_damping, bad_cavity };
enum class DephasingRegime { none, weak, strong };

struct RegimeLabel {
  CavityRegime cavity = CavityRegime::lossless;
  DephasingRegime dephasing = DephasingRegime::none;
  bool borderline = false;  // parameters sat between regimes; label is nearest
  std::string note;
};

// Places parameters into the analytic regimes.  kappa = 0 is lossless;
// kappa < g sqrt(N) is weak damping; kappa >= 10 g sqrt(N) is bad cavity.
// In-between values get the nearest label (split at the geometric midpoint
// sqrt(10) g sqrt(N)) and a borderline warning.  Dephasing splits at
// kappa_phi = N gamma0; with kappa = 0 that scale does not exist, so the
// comparison falls back to g sqrt(N), again flagged as borderline.
inline RegimeLabel regime_classify(const ModelParams& p) {
  p.validate();
  RegimeLabel out;
  const double om = p.collective_coupling();
  if (p.kappa == 0.0) {
    out.cavity = CavityRegime::lossless;
  } else if (p.kappa < om) {
    out.cavity = CavityRegime::weak_damping;
  } else if (p.kappa >= 10.0 * om) {
    out.cavity = CavityRegime::bad_cavity;
  } else {
    out.borderline = true;
    out.cavity = p.kappa < std::sqrt(10.0) * om ? CavityRegime::weak_damping
                                                : CavityRegime::bad_cavity;
    out.note = "kappa sits between the weak-damping and bad-cavity regimes; "
               "nearest label assigned";
  }
  if (p.kappa_phi == 0.0) {
    out.dephasing = DephasingRegime::none;
  } else if (p.kappa > 0.0) {
    out.dephasing = p.kappa_phi < p.collective_rate() ? DephasingRegime::weak
                                                      : DephasingRegime::strong;
  } else {
    out.borderline = true;
    out.dephasing =
        p.kappa_phi < om ? DephasingRegime::weak : DephasingRegime::strong;
    if (!out.note.empty()) out.note += "; ";
    out.note += "dephasing regime compared against g sqrt(N) because "
                "gamma0 is undefined at kappa = 0";
  }
  return out;
}

inline const char* regime_tag(CavityRegime r) {
  switch (r) {
    case CavityRegime::lossless: return "lossless";
    case CavityRegime::weak_damping: return "weak_damping";
    case CavityRegime::bad_cavity: return "bad_cavity";
  }
  throw std::logic_error("regime_tag: unreachable");
}

inline const char* regime_tag(DephasingRegime r) {
  switch (r) {
    case DephasingRegime::none: return "none";
    case DephasingRegime::weak: return "weak";
    case DephasingRegime::strong: return "strong";
  }
  throw std::logic_error("regime_tag: unreachable");
}

// Closed-form bright-mode population for the all-parent start in each cavity
// regime.  The weak-damping branch is the exact damped-Rabi solution of the
// moment system (it requires kappa < 4 g sqrt(N)); the bad-cavity branch is
// the adiabatic single-exponential collective decay.
inline double analytic_n0(CavityRegime regime, const ModelParams& p, double t) {
  p.validate();
  const double om = p.collective_coupling();
  switch (regime) {
    case CavityRegime::lossless: {
      const double c = std::cos(om * t);
      return c * c;
    }
    case CavityRegime::weak_damping: {
      if (!(p.kappa < 4.0 * om))
        throw std::invalid_argument(
            "analytic_n0: damped-Rabi form needs kappa < 4 g sqrt(N)");
      const double omt = std::sqrt(om * om - p.kappa * p.kappa / 16.0);
      const double a =
          std::cos(omt * t) + p.kappa / (4.0 * omt) * std::sin(omt * t);
      return std::exp(-0.5 * p.kappa * t) * a * a;
    }
    case CavityRegime::bad_cavity:
      return std::exp(-p.collective_rate() * t);
  }
  throw std::logic_error("analytic_n0: unreachable");
}

// Two-by-two adiabatic dephasing system for y = (n_C, x) with x the coherence
// deficit n_C - n_bar; valid after the cavity has been eliminated.
inline Eigen::Matrix2d adiabatic_matrix(const ModelParams& p) {
  const double ng = p.collective_rate();
  Eigen::Matrix2d m;
  m << -ng, -p.kappa_phi,
       -ng * (1.0 - 1.0 / double(p.n_sites)), -p.kappa_phi;
  return m;
}

inline Eigen::Vector2d adiabatic_2x2_rhs(const Eigen::Vector2d& y,
                                         const ModelParams& p) {
  return adiabatic_matrix(p) * y;
}

// Decay eigenvalues of the adiabatic system together with the asymptotic
// labels they approach: (kappa_phi/N, N gamma0) deep in the weak-dephasing
// regime and (gamma0, kappa_phi) deep in the strong one.
struct DephasingRates {
  double lambda_slow = 0.0;  // eigenvalue closer to zero
  double lambda_fast = 0.0;
  double slow_label = 0.0;
  double fast_label = 0.0;
  DephasingRegime regime = DephasingRegime::none;
};

inline DephasingRates dephasing_decay_rates(const ModelParams& p) {
  p.validate();
  if (!(p.kappa_phi > 0.0))
    throw std::invalid_argument("dephasing_decay_rates: requires kappa_phi > 0");
  const double ng = p.collective_rate();  // also validates kappa > 0
  const double tr = -(ng + p.kappa_phi);
  const double det = p.gamma0() * p.kappa_phi;
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  DephasingRates out;
  out.lambda_slow = 0.5 * (tr + disc);
  out.lambda_fast = 0.5 * (tr - disc);
  if (p.kappa_phi < ng) {
    out.regime = DephasingRegime::weak;
    out.slow_label = p.kappa_phi / double(p.n_sites);
    out.fast_label = ng;
  } else {
    out.regime = DephasingRegime::strong;
    out.slow_label = p.gamma0();
    out.fast_label = p.kappa_phi;
  }
  return out;
}

// Integrates the five-moment system (plus the emitted-count quadrature) onto
// the output grid.  Exactness of the closure makes this engine the cheap
// reference for the full density-matrix evolution.
inline Trajectory evolve_moments(const MomentState& m0, const ModelParams& p,
                                 const std::vector<double>& t_grid,
                                 const OdeOptions& opt = {}) {
  p.validate();
  Eigen::VectorXd y(6);
  y << m0.n_c, m0.n_nu, m0.r, m0.u, m0.n_bar, 0.0;

  Trajectory tr;
  tr.times.reserve(t_grid.size());
  auto rhs = [&p](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
    MomentState m{v[0], v[1], v[2], v[3], v[4]};
    const MomentState d = moment_rhs_dephasing(m, p);
    dv[0] = d.n_c;
    dv[1] = d.n_nu;
    dv[2] = d.r;
    dv[3] = d.u;
    dv[4] = d.n_bar;
    dv[5] = p.kappa * v[1];  // emitted-count quadrature
  };
  auto record = [&tr](std::size_t, double t, const Eigen::VectorXd& v) {
    tr.times.push_back(t);
    tr.n_c.push_back(v[0]);
    tr.n_nu.push_back(v[1]);
    tr.re_coh.push_back(v[2]);
    tr.im_coh.push_back(v[3]);
    tr.n_bar.push_back(v[4]);
    tr.emitted.push_back(v[5]);
  };
  integrate_grid(rhs, y, t_grid, opt, record);
  return tr;
}

}  // namespace fermidicke
