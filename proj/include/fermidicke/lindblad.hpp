// lindblad.hpp — open-system dynamics of the full density matrix
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fermidicke/basis.hpp"
#include "fermidicke/collective.hpp"
#include "fermidicke/moments.hpp"
#include "fermidicke/ode.hpp"
#include "fermidicke/site_operators.hpp"
#include "fermidicke/sparse.hpp"
#include "fermidicke/trajectory.hpp"

namespace fermidicke {

// Coupling of the collective emission mode to radiation mode 0:
//   H = g sqrt(N) (nu^d C + C^d nu).
inline SparseOperator hamiltonian(const BasisDescriptor& b,
                                  const ModelParams& p) {
  p.validate();
  if (b.n_sites != p.n_sites)
    throw std::invalid_argument("hamiltonian: basis/parameter n_sites mismatch");
  if (b.n_modes() < 1)
    throw std::invalid_argument("hamiltonian: need at least one radiation mode");
  const SparseOperator c = collective_mode_operator(b, 0);
  const SparseOperator nu = mode_annihilation_operator(b, 0);
  const SparseOperator half = SparseOperator(adjoint_of(nu) * c);
  return p.collective_coupling() * (half + adjoint_of(half));
}

// Generic Lindblad generator: -i[H, rho] + sum_L (L rho L^d - {L^d L, rho}/2).
inline DenseMatrix lindblad_rhs(const DenseMatrix& rho, const SparseOperator& h,
                                const std::vector<SparseOperator>& jumps) {
  if (rho.rows() != rho.cols() || rho.rows() != h.rows())
    throw std::invalid_argument("lindblad_rhs: dimension mismatch");
  DenseMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& l : jumps) {
    const SparseOperator ldl = SparseOperator(adjoint_of(l) * l);
    out += (l * rho) * adjoint_of(l) - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

// Moment coordinates of a pure state: the exact initial condition handed to
// the closed moment system.  Mode coherences vanish unless the basis carries
// a radiation mode.
inline MomentState moments_from_state(const BasisDescriptor& b,
                                      const StateVector& psi) {
  if (psi.size() != b.dim)
    throw std::invalid_argument("moments_from_state: dimension mismatch");
  const double n2 = psi.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-9)
    throw std::invalid_argument("moments_from_state: state must be normalized");
  MomentState m;
  const StateVector cpsi = collective_mode_operator(b, 0) * psi;
  m.n_c = cpsi.squaredNorm();
  double ne = 0.0;
  for (std::int64_t i = 0; i < b.dim; ++i)
    ne += double(b.parent_count(b.atomic_config(i))) * std::norm(psi[i]);
  m.n_bar = ne / double(b.n_sites);
  if (b.n_modes() >= 1) {
    const StateVector nupsi = mode_annihilation_operator(b, 0) * psi;
    m.n_nu = nupsi.squaredNorm();
    const Complex coh = cpsi.dot(nupsi);  // <C^d nu>
    m.r = coh.real();
    m.u = -coh.imag();
  }
  return m;
}

struct DensityEvolveOptions {
  OdeOptions ode{};
  std::int64_t dim_cap = 8192;            // refuse larger density problems
  int check_stride = 1;                   // checkpoint stride for spectra
  std::int64_t positivity_dim_cap = 2048; // skip eigenvalue checks above this
  double positivity_abort = -1e-6;        // min eigenvalue below this aborts
};

// Integrates the master equation for the cavity-coupled chain with mode loss
// kappa and optional site dephasing kappa_phi.  The integrator state is the
// vectorized density matrix plus one quadrature slot accumulating the emitted
// count kappa * <n_nu>.  The trace is rescaled to one after every accepted
// step; hermiticity and spectral positivity are measured (never silently
// repaired) at output checkpoints.
inline Trajectory evolve_density_matrix(const BasisDescriptor& b,
                                        const DenseMatrix& rho0,
                                        const ModelParams& p,
                                        const std::vector<double>& t_grid,
                                        const DensityEvolveOptions& o = {}) {
  p.validate();
  const std::int64_t d = b.dim;
  if (d > o.dim_cap)
    throw std::length_error("evolve_density_matrix: dimension " +
                            std::to_string(d) + " exceeds cap " +
                            std::to_string(o.dim_cap));
  if (rho0.rows() != d || rho0.cols() != d)
    throw std::invalid_argument("evolve_density_matrix: state dimension mismatch");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("evolve_density_matrix: initial state not hermitian");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-8 ||
      std::abs(rho0.trace().imag()) > 1e-12)
    throw std::invalid_argument("evolve_density_matrix: initial trace must be 1");

  const SparseOperator h = hamiltonian(b, p);
  const SparseOperator nu = mode_annihilation_operator(b, 0);
  const SparseOperator nu_adj = adjoint_of(nu);
  const SparseOperator c0 = collective_mode_operator(b, 0);
  const SparseOperator n_bright = SparseOperator(adjoint_of(c0) * c0);

  // Per-index lookups driving the diagonal (anticommutator) parts of the
  // dissipators elementwise: mode occupation, parent count, atomic bits.
  std::vector<double> occ(d), ne(d);
  std::vector<std::uint32_t> conf(d);
  for (std::int64_t i = 0; i < d; ++i) {
    occ[i] = double(b.mode_occupation(i, 0));
    conf[i] = b.atomic_config(i);
    ne[i] = double(b.parent_count(conf[i]));
  }
  const double kap = p.kappa, kphi = p.kappa_phi;
  const int n_sites = b.n_sites;

  using Vec = Eigen::VectorXcd;
  Vec y(d * d + 1);
  Eigen::Map<DenseMatrix>(y.data(), d, d) = rho0;
  y[d * d] = 0.0;

  auto rhs = [&](double, const Vec& v, Vec& dv) {
    Eigen::Map<const DenseMatrix> r(v.data(), d, d);
    Eigen::Map<DenseMatrix> out(dv.data(), d, d);
    out.noalias() = Complex(0.0, -1.0) * (h * r);
    out.noalias() += Complex(0.0, 1.0) * (r * h);
    if (kap > 0.0) out.noalias() += kap * ((nu * r) * nu_adj);
    double flux = 0.0;
    for (std::int64_t cc = 0; cc < d; ++cc) {
      for (std::int64_t rr = 0; rr < d; ++rr) {
        double w = -0.5 * kap * (occ[rr] + occ[cc]);
        if (kphi > 0.0) {
          const double common =
              double(n_sites - std::popcount(conf[rr] | conf[cc]));
          w += kphi * (common - 0.5 * (ne[rr] + ne[cc]));
        }
        out(rr, cc) += w * r(rr, cc);
      }
      flux += occ[cc] * r(cc, cc).real();
    }
    dv[d * d] = kap * flux;
  };

  auto renormalize = [&](Vec& v) {
    Eigen::Map<DenseMatrix> r(v.data(), d, d);
    const double tr = r.trace().real();
    if (!(tr > 0.5))
      throw std::runtime_error(
          "evolve_density_matrix: trace collapsed to " + std::to_string(tr));
    r *= 1.0 / tr;
    return true;
  };

  Trajectory trj;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto record = [&](std::size_t idx, double t, const Vec& v) {
    Eigen::Map<const DenseMatrix> r(v.data(), d, d);
    double nc = 0.0;
    for (int k = 0; k < n_bright.outerSize(); ++k)
      for (SparseOperator::InnerIterator it(n_bright, k); it; ++it)
        nc += (it.value() * r(it.col(), it.row())).real();
    double nnu = 0.0, nbar = 0.0;
    for (std::int64_t i = 0; i < d; ++i) {
      nnu += occ[i] * r(i, i).real();
      nbar += ne[i] * r(i, i).real();
    }
    trj.times.push_back(t);
    trj.n_c.push_back(nc);
    trj.n_nu.push_back(nnu);
    trj.n_bar.push_back(nbar / double(n_sites));
    trj.emitted.push_back(v[d * d].real());
    trj.hermiticity_residual.push_back((r - r.adjoint()).cwiseAbs().maxCoeff());
    trj.trace_residual.push_back(std::abs(r.trace().real() - 1.0));
    double mineig = nan;
    if (d <= o.positivity_dim_cap &&
        idx % std::max(1, o.check_stride) == 0) {
      const DenseMatrix sym = 0.5 * (r + r.adjoint());
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sym, Eigen::EigenvaluesOnly);
      if (es.info() == Eigen::Success) {
        mineig = es.eigenvalues()[0];
        if (mineig < o.positivity_abort)
          throw std::runtime_error(
              "evolve_density_matrix: density matrix lost positivity at t=" +
              std::to_string(t) + " (min eigenvalue " +
              std::to_string(mineig) + ")");
      }
    }
    trj.min_eigenvalue.push_back(mineig);
  };

  integrate_grid(rhs, std::move(y), t_grid, o.ode, record, renormalize);
  return trj;
}

}  // namespace fermidicke
