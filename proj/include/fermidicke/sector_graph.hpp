// sector_graph.hpp — combinatorial decay graph over collective-mode occupations
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fermidicke/basis.hpp"
#include "fermidicke/site_operators.hpp"
#include "fermidicke/sparse.hpp"
#include "fermidicke/states.hpp"
#include "fermidicke/trajectory.hpp"

namespace fermidicke {

// A family of M orthonormal collective emission modes over N sites.  Row m of
// weights defines the mode operator T_m = sum_j w_mj e_j; rates holds the
// per-mode collective prefactor Gamma_m.
struct CollectiveModeSet {
  Eigen::MatrixXcd weights;  // M x N, orthonormal rows
  Eigen::VectorXd rates;     // M positive entries

  int n_emitting() const { return static_cast<int>(weights.rows()); }
  int n_sites() const { return static_cast<int>(weights.cols()); }
};

inline void validate_mode_set(const CollectiveModeSet& ms, int n_sites,
                              double tol = 1e-12) {
  if (ms.n_sites() != n_sites)
    throw std::invalid_argument("mode set: weight columns must equal n_sites");
  if (ms.n_emitting() < 1 || ms.n_emitting() > n_sites)
    throw std::invalid_argument("mode set: need 1..n_sites emitting modes");
  if (ms.rates.size() != ms.n_emitting())
    throw std::invalid_argument("mode set: one rate per emitting mode");
  for (int m = 0; m < ms.n_emitting(); ++m)
    if (!(ms.rates[m] > 0.0))
      throw std::invalid_argument("mode set: rates must be positive");
  const Eigen::MatrixXcd g = ms.weights * ms.weights.adjoint();
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(ms.n_emitting(), ms.n_emitting());
  if ((g - id).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("mode set: weight rows are not orthonormal");
}

// Discrete-Fourier mode family, the canonical choice: row k carries the
// weights exp(2 pi i j k / N)/sqrt(N).  Row 0 is the uniform bright mode.
inline CollectiveModeSet dft_mode_set(int n_sites,
                                      const Eigen::VectorXd& rates) {
  const int m = static_cast<int>(rates.size());
  if (m < 1 || m > n_sites)
    throw std::invalid_argument("dft_mode_set: need 1..n_sites rates");
  CollectiveModeSet ms;
  ms.weights.resize(m, n_sites);
  ms.rates = rates;
  const double scale = 1.0 / std::sqrt(double(n_sites));
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < n_sites; ++j) {
      const double arg =
          2.0 * std::numbers::pi * double(j) * double(k) / double(n_sites);
      ms.weights(k, j) = scale * Complex(std::cos(arg), std::sin(arg));
    }
  return ms;
}

// Extends M orthonormal rows to a full N x N unitary family by projecting the
// remaining Fourier rows against what is already present; the spectator modes
// this produces label the sectors physically.
inline Eigen::MatrixXcd complete_mode_set(const CollectiveModeSet& ms,
                                          int n_sites) {
  validate_mode_set(ms, n_sites);
  Eigen::MatrixXcd rows(n_sites, n_sites);
  int have = ms.n_emitting();
  rows.topRows(have) = ms.weights;
  const CollectiveModeSet dft =
      dft_mode_set(n_sites, Eigen::VectorXd::Ones(n_sites));
  for (int k = 0; k < n_sites && have < n_sites; ++k) {
    Eigen::VectorXcd cand = dft.weights.row(k).transpose();
    for (int r = 0; r < have; ++r) {
      const Eigen::VectorXcd row = rows.row(r).transpose();
      cand -= row.dot(cand) * row;
    }
    const double nrm = cand.norm();
    if (nrm > 1e-8) rows.row(have++) = (cand / nrm).transpose();
  }
  if (have != n_sites)
    throw std::runtime_error("complete_mode_set: completion failed");
  return rows;
}

struct SectorNode {
  std::uint32_t occupations = 0;  // bit k = mode k holds a quantum
  double rate = 0.0;              // total outgoing emission rate
  int sector = 0;                 // spectator-bit pattern
};

struct SectorEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  int mode = 0;
};

// Occupation graph over all N collective modes: emission toggles one of the
// first M (emitting) bits from empty to filled, so the graph decomposes into
// 2^(N-M) disconnected M-dimensional hypercubes indexed by the frozen
// spectator bits.
struct SectorGraph {
  int n_modes = 0;     // N
  int n_emitting = 0;  // M
  std::vector<SectorNode> nodes;  // indexed by occupation value
  std::vector<SectorEdge> edges;
  std::vector<std::vector<std::uint32_t>> sectors;
};

inline SectorGraph multimode_sector_graph(const BasisDescriptor& b,
                                          const CollectiveModeSet& ms) {
  if (!emits_fermion(b.stats))
    throw std::invalid_argument(
        "multimode_sector_graph: requires a fermionic emitted quantum");
  validate_mode_set(ms, b.n_sites);
  const int n = b.n_sites;
  const int m = ms.n_emitting();
  SectorGraph g;
  g.n_modes = n;
  g.n_emitting = m;
  const std::uint32_t count = std::uint32_t(1) << n;
  g.nodes.resize(count);
  g.sectors.resize(std::size_t(1) << (n - m));
  for (std::uint32_t occ = 0; occ < count; ++occ) {
    SectorNode& node = g.nodes[occ];
    node.occupations = occ;
    node.sector = static_cast<int>(occ >> m);
    for (int k = 0; k < m; ++k)
      if (!((occ >> k) & 1u)) {
        node.rate += double(n) * ms.rates[k];
        g.edges.push_back({occ, occ | (std::uint32_t(1) << k), k});
      }
    g.sectors[node.sector].push_back(occ);
  }
  return g;
}

// Sorted multiset of node rates for every sector; identical across sectors
// because spectator bits never carry rate.
inline std::vector<std::vector<double>> sector_rate_spectrum(
    const SectorGraph& g) {
  std::vector<std::vector<double>> spectra;
  spectra.reserve(g.sectors.size());
  for (const auto& sector : g.sectors) {
    std::vector<double> rates;
    rates.reserve(sector.size());
    for (std::uint32_t id : sector) rates.push_back(g.nodes[id].rate);
    std::sort(rates.begin(), rates.end());
    spectra.push_back(std::move(rates));
  }
  return spectra;
}

// Concrete Hilbert-space state carrying the given collective occupations:
// the ordered product of mode operators (ascending mode index) applied to the
// all-parent state, which is the collective vacuum.
inline StateVector collective_basis_state(const BasisDescriptor& b,
                                          const Eigen::MatrixXcd& full_rows,
                                          std::uint32_t occupations) {
  if (full_rows.rows() != b.n_sites || full_rows.cols() != b.n_sites)
    throw std::invalid_argument(
        "collective_basis_state: need a full N x N mode family");
  if (occupations >> b.n_sites)
    throw std::invalid_argument("collective_basis_state: occupation out of range");
  StateVector psi = all_parent_state(b);
  for (int k = b.n_sites - 1; k >= 0; --k)
    if ((occupations >> k) & 1u)
      psi = weighted_jump_operator(b, full_rows.row(k).transpose()) * psi;
  return psi;
}

inline std::string occupation_string(std::uint32_t occ, int n_modes) {
  std::string s(n_modes, '0');
  for (int k = 0; k < n_modes; ++k)
    if ((occ >> k) & 1u) s[k] = '1';
  return s;
}

// DOT export: node ids are occupation strings (mode 0 first), each node
// carries its total rate, each edge the emitting mode it toggles.
inline void write_dot(const SectorGraph& g, std::ostream& os) {
  os << "digraph sectors {\n";
  for (const auto& node : g.nodes)
    os << "  \"" << occupation_string(node.occupations, g.n_modes)
       << "\" [rate=" << format_g17(node.rate) << "];\n";
  for (const auto& e : g.edges)
    os << "  \"" << occupation_string(e.src, g.n_modes) << "\" -> \""
       << occupation_string(e.dst, g.n_modes) << "\" [mode=" << e.mode
       << "];\n";
  os << "}\n";
}

inline nlohmann::json graph_to_json(const SectorGraph& g) {
  nlohmann::json j;
  j["n_modes"] = g.n_modes;
  j["n_emitting"] = g.n_emitting;
  j["nodes"] = nlohmann::json::array();
  for (const auto& node : g.nodes) {
    std::vector<int> occ(g.n_modes);
    for (int k = 0; k < g.n_modes; ++k) occ[k] = (node.occupations >> k) & 1u;
    j["nodes"].push_back({{"id", node.occupations},
                          {"occupations", occ},
                          {"rate", node.rate},
                          {"sector", node.sector}});
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"mode", e.mode}});
  j["sectors"] = g.sectors;
  return j;
}

}  // namespace fermidicke
