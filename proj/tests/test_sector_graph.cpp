// test_sector_graph.cpp — multi-mode decay graph structure and numerics
#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <set>
#include <sstream>
#include <tuple>

#include "fermidicke/basis.hpp"
#include "fermidicke/sector_graph.hpp"

using namespace fermidicke;

namespace {

using EdgeKey = std::tuple<std::uint32_t, std::uint32_t, int>;

std::set<EdgeKey> edge_set(const SectorGraph& g) {
  std::set<EdgeKey> s;
  for (const auto& e : g.edges) s.insert({e.src, e.dst, e.mode});
  return s;
}

}  // namespace

TEST_CASE("mode set validation and the Fourier family", "[sector_graph]") {
  Eigen::VectorXd rates(2);
  rates << 0.5, 1.25;
  const CollectiveModeSet ms = dft_mode_set(4, rates);
  CHECK(ms.n_emitting() == 2);
  CHECK(ms.n_sites() == 4);
  CHECK_NOTHROW(validate_mode_set(ms, 4));
  CHECK_THROWS_AS(validate_mode_set(ms, 5), std::invalid_argument);

  CollectiveModeSet bad = ms;
  bad.rates[1] = 0.0;
  CHECK_THROWS_AS(validate_mode_set(bad, 4), std::invalid_argument);
  CollectiveModeSet dup = ms;
  dup.weights.row(1) = dup.weights.row(0);  // rows no longer orthonormal
  CHECK_THROWS_AS(validate_mode_set(dup, 4), std::invalid_argument);
  CollectiveModeSet short_rates = ms;
  short_rates.rates = Eigen::VectorXd::Ones(1);
  CHECK_THROWS_AS(validate_mode_set(short_rates, 4), std::invalid_argument);

  CHECK_THROWS_AS(dft_mode_set(4, Eigen::VectorXd::Ones(5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(dft_mode_set(4, Eigen::VectorXd::Ones(0)),
                  std::invalid_argument);
}

TEST_CASE("mode-set completion yields a unitary family", "[sector_graph]") {
  Eigen::VectorXd rates(2);
  rates << 1.0, 2.0;

  SECTION("from Fourier rows") {
    const CollectiveModeSet ms = dft_mode_set(4, rates);
    const Eigen::MatrixXcd full = complete_mode_set(ms, 4);
    const Eigen::MatrixXcd gram = full * full.adjoint();
    CHECK((gram - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-12);
    // the emitting rows come through unchanged
    CHECK((full.topRows(2) - ms.weights).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("from a rotated emitting pair") {
    const CollectiveModeSet dft = dft_mode_set(4, rates);
    CollectiveModeSet rotated = dft;
    const double s = std::sqrt(0.5);
    rotated.weights.row(0) = s * (dft.weights.row(0) + dft.weights.row(1));
    rotated.weights.row(1) = s * (dft.weights.row(0) - dft.weights.row(1));
    const Eigen::MatrixXcd full = complete_mode_set(rotated, 4);
    const Eigen::MatrixXcd gram = full * full.adjoint();
    CHECK((gram - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("graph structure matches an independent construction",
          "[sector_graph]") {
  Eigen::VectorXd rates(2);
  rates << 0.5, 1.25;
  const BasisDescriptor b = build_basis(4, 0, StatisticsConfig::boson_to_fermion);
  const SectorGraph g = multimode_sector_graph(b, dft_mode_set(4, rates));

  CHECK(g.n_modes == 4);
  CHECK(g.n_emitting == 2);
  REQUIRE(g.nodes.size() == 16);
  REQUIRE(g.sectors.size() == 4);

  // expected graph built from scratch: emission fills one empty emitting bit
  std::set<EdgeKey> expected;
  for (std::uint32_t occ = 0; occ < 16; ++occ) {
    double rate = 0.0;
    for (int m = 0; m < 2; ++m)
      if (!((occ >> m) & 1u)) {
        expected.insert({occ, occ | (1u << m), m});
        rate += 4.0 * rates[m];
      }
    CHECK(g.nodes[occ].occupations == occ);
    CHECK(g.nodes[occ].rate == Catch::Approx(rate).margin(1e-14));
    CHECK(g.nodes[occ].sector == int(occ >> 2));
  }
  CHECK(edge_set(g) == expected);
  CHECK(g.edges.size() == 16);

  // four disconnected squares with identical rate spectra
  const auto spectra = sector_rate_spectrum(g);
  REQUIRE(spectra.size() == 4);
  const std::vector<double> reference{0.0, 2.0, 5.0, 7.0};
  for (const auto& s : spectra) {
    REQUIRE(s.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(s[i] == Catch::Approx(reference[i]).margin(1e-14));
  }

  // five modes, two emitting: eight sectors of four nodes, 32 edges
  const BasisDescriptor b5 = build_basis(5, 0, StatisticsConfig::fermion_to_boson);
  const SectorGraph g5 =
      multimode_sector_graph(b5, dft_mode_set(5, Eigen::VectorXd::Ones(2)));
  CHECK(g5.nodes.size() == 32);
  CHECK(g5.sectors.size() == 8);
  CHECK(g5.edges.size() == 32);
  for (const auto& sector : g5.sectors) CHECK(sector.size() == 4);

  // photonic chains do not decompose this way
  const BasisDescriptor bb = build_basis(4, 0, StatisticsConfig::boson_to_boson);
  CHECK_THROWS_AS(multimode_sector_graph(bb, dft_mode_set(4, rates)),
                  std::invalid_argument);
}

TEST_CASE("graph numerics: states, matrix elements, node rates",
          "[sector_graph]") {
  Eigen::VectorXd rates(2);
  rates << 0.5, 1.25;
  const int n = 4;
  const BasisDescriptor b = build_basis(n, 0, StatisticsConfig::boson_to_fermion);
  const CollectiveModeSet ms = dft_mode_set(n, rates);
  const SectorGraph g = multimode_sector_graph(b, ms);
  const Eigen::MatrixXcd full = complete_mode_set(ms, n);

  std::vector<StateVector> states(16);
  std::vector<std::vector<StateVector>> applied(16);
  std::vector<SparseOperator> mode_ops;
  for (int m = 0; m < 2; ++m)
    mode_ops.push_back(weighted_jump_operator(b, full.row(m).transpose()));

  for (std::uint32_t occ = 0; occ < 16; ++occ) {
    states[occ] = collective_basis_state(b, full, occ);
    CHECK(std::abs(states[occ].norm() - 1.0) < 1e-12);
    applied[occ].resize(2);
    for (int m = 0; m < 2; ++m) applied[occ][m] = mode_ops[m] * states[occ];
  }

  // the occupation basis is orthonormal
  for (std::uint32_t a = 0; a < 16; ++a)
    for (std::uint32_t c = a + 1; c < 16; ++c)
      CHECK(std::abs(states[a].dot(states[c])) < 1e-12);

  const auto edges = edge_set(g);
  for (std::uint32_t src = 0; src < 16; ++src) {
    for (int m = 0; m < 2; ++m) {
      for (std::uint32_t dst = 0; dst < 16; ++dst) {
        const double amp = std::abs(states[dst].dot(applied[src][m]));
        if (edges.count({src, dst, m})) {
          CHECK(std::abs(amp - 1.0) < 1e-10);  // one quantum moves, weight one
        } else {
          CHECK(amp < 1e-10);
        }
      }
    }
    // total outgoing rate equals the node label
    double numeric = 0.0;
    for (int m = 0; m < 2; ++m)
      numeric += double(n) * rates[m] * applied[src][m].squaredNorm();
    CHECK(std::abs(numeric - g.nodes[src].rate) < 1e-10);
  }

  CHECK_THROWS_AS(collective_basis_state(b, full, 16u), std::invalid_argument);
  CHECK_THROWS_AS(collective_basis_state(b, full.topRows(2), 1u),
                  std::invalid_argument);
}

TEST_CASE("graph serialization", "[sector_graph]") {
  Eigen::VectorXd rates(1);
  rates << 2.0;
  const BasisDescriptor b = build_basis(2, 0, StatisticsConfig::boson_to_fermion);
  const SectorGraph g = multimode_sector_graph(b, dft_mode_set(2, rates));

  SECTION("DOT text") {
    std::ostringstream os;
    write_dot(g, os);
    const std::string dot = os.str();
    CHECK(dot.rfind("digraph sectors {\n", 0) == 0);
    CHECK(dot.find("  \"00\" [rate=4];\n") != std::string::npos);
    CHECK(dot.find("  \"10\" [rate=0];\n") != std::string::npos);
    CHECK(dot.find("  \"00\" -> \"10\" [mode=0];\n") != std::string::npos);
    CHECK(dot.find("  \"01\" -> \"11\" [mode=0];\n") != std::string::npos);
    CHECK(dot.back() == '\n');
    CHECK(dot.find("}\n") != std::string::npos);
    CHECK(occupation_string(1u, 4) == "1000");
    CHECK(occupation_string(6u, 4) == "0110");
  }
  SECTION("JSON document") {
    const nlohmann::json j = graph_to_json(g);
    CHECK(j["n_modes"] == 2);
    CHECK(j["n_emitting"] == 1);
    REQUIRE(j["nodes"].size() == 4);
    CHECK(j["nodes"][0]["id"] == 0);
    CHECK(j["nodes"][0]["rate"] == 4.0);
    CHECK(j["nodes"][0]["occupations"] == nlohmann::json::array({0, 0}));
    CHECK(j["nodes"][0]["sector"] == 0);
    CHECK(j["edges"].size() == 2);
    CHECK(j["sectors"].size() == 2);
  }
}
