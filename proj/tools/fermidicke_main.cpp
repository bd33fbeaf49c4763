// fermidicke_main.cpp — command-line front end: rates, classify, graph, evolve, sweep
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fermidicke/config.hpp"
#include "fermidicke/estimators.hpp"
#include "fermidicke/fermidicke.hpp"

namespace fd = fermidicke;

namespace {

std::int64_t env_dim_cap() {
  if (const char* s = std::getenv("FERMIDICKE_MAX_DIM")) {
    char* end = nullptr;
    const long long v = std::strtoll(s, &end, 10);
    if (end == s || *end != '\0' || v < 2)
      throw std::invalid_argument("FERMIDICKE_MAX_DIM must be an integer >= 2");
    return v;
  }
  return fd::kDefaultDimCap;
}

// Writes text to the path, or to stdout when the path is empty.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fd::IoError("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw fd::IoError("failed writing output file '" + path + "'");
}

// Every run finishes by emitting the fully resolved configuration: to a
// sidecar file next to the data when --out is given, to stderr otherwise,
// so a run is always reproducible from its own artifacts.
void emit_resolved_config(const std::string& out, const nlohmann::json& j) {
  if (out.empty()) {
    std::cerr << "resolved-config " << j.dump() << "\n";
  } else {
    write_text(out + ".config.json", j.dump(2) + "\n");
  }
}

void check_format(const std::string& format,
                  std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw std::invalid_argument("unsupported format '" + format + "'");
}

std::vector<double> resolve_phases(int n, double phi,
                                   const std::vector<double>& explicit_phases) {
  if (!explicit_phases.empty()) {
    if (static_cast<int>(explicit_phases.size()) != n)
      throw std::invalid_argument("need exactly one phase per site");
    return explicit_phases;
  }
  std::vector<double> phases(n);
  for (int j = 0; j < n; ++j) phases[j] = j * phi;
  return phases;
}

// ---- rates ----

int run_rates(const fd::RatesConfig& cfg) {
  check_format(cfg.format, {"csv", "json"});
  const fd::StatisticsConfig stats = fd::stats_from_tag(cfg.stats);
  if (!(cfg.gamma0 > 0.0))
    throw std::invalid_argument("gamma0 must be positive");
  const std::vector<double> phases = resolve_phases(cfg.n, cfg.phi, cfg.phases);

  const fd::BasisDescriptor basis =
      fd::build_basis(cfg.n, 0, stats, -1, env_dim_cap());
  const fd::SparseOperator jump = fd::collective_jump(basis, cfg.gamma0);
  const fd::StateVector psi = fd::product_superposition_state(basis, phases);

  const double closed = fd::closed_form_rate(stats, phases, cfg.gamma0);
  const double numeric = fd::rate_numeric(jump, psi);
  const double bosonic = fd::rate_bosonic_product_state(cfg.n, cfg.gamma0);
  const double bound = fd::max_rate_bound(cfg.n, cfg.gamma0);

  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "n,stats,gamma0,rate_closed_form,rate_numeric,"
          "rate_bosonic_reference,max_rate_bound\n";
    os << cfg.n << ',' << cfg.stats << ',' << fd::format_g17(cfg.gamma0) << ','
       << fd::format_g17(closed) << ',' << fd::format_g17(numeric) << ','
       << fd::format_g17(bosonic) << ',' << fd::format_g17(bound) << '\n';
  } else {
    nlohmann::json j{{"n", cfg.n},
                     {"stats", cfg.stats},
                     {"gamma0", cfg.gamma0},
                     {"phases", phases},
                     {"rate_closed_form", closed},
                     {"rate_numeric", numeric},
                     {"rate_bosonic_reference", bosonic},
                     {"max_rate_bound", bound}};
    os << j.dump(2) << '\n';
  }
  write_text(cfg.out, os.str());
  emit_resolved_config(cfg.out, nlohmann::json(cfg));
  return 0;
}

// ---- classify ----

int run_classify(const fd::ClassifyConfig& cfg) {
  check_format(cfg.format, {"csv", "json"});
  const fd::StatisticsConfig stats = fd::stats_from_tag(cfg.stats);
  if (!(cfg.gamma0 > 0.0))
    throw std::invalid_argument("gamma0 must be positive");
  const fd::BasisDescriptor basis =
      fd::build_basis(cfg.n, 0, stats, -1, env_dim_cap());
  const fd::SparseOperator jump = fd::collective_jump(basis, cfg.gamma0);
  const double rate = fd::max_rate_bound(cfg.n, cfg.gamma0);
  const double nil = fd::nilpotency_check(jump);
  const fd::Classification cls = fd::classify_states(jump, rate);

  std::vector<fd::ExcitationRow> rows;
  if (basis.dim < fd::kDenseCap)
    rows = fd::excitation_resolved_classification(jump, basis, rate);

  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "excitations,block_dim,bright,dark,other\n";
    for (const auto& r : rows)
      os << r.excitations << ',' << r.block_dim << ',' << r.bright << ','
         << r.dark << ',' << r.other << '\n';
    os << "total," << basis.dim << ',' << cls.bright_count << ','
       << cls.dark_count << ',' << cls.other_count << '\n';
  } else {
    nlohmann::json j{{"n", cfg.n},
                     {"stats", cfg.stats},
                     {"gamma0", cfg.gamma0},
                     {"dim", basis.dim},
                     {"collective_rate", rate},
                     {"nilpotency", nil},
                     {"bright", cls.bright_count},
                     {"dark", cls.dark_count},
                     {"other", cls.other_count},
                     {"two_valued", cls.two_valued}};
    j["groups"] = nlohmann::json::array();
    for (const auto& gr : cls.groups)
      j["groups"].push_back(
          {{"value", gr.value}, {"multiplicity", gr.multiplicity}});
    j["blocks"] = nlohmann::json::array();
    for (const auto& r : rows)
      j["blocks"].push_back({{"excitations", r.excitations},
                             {"block_dim", r.block_dim},
                             {"bright", r.bright},
                             {"dark", r.dark},
                             {"other", r.other}});
    os << j.dump(2) << '\n';
  }
  write_text(cfg.out, os.str());
  emit_resolved_config(cfg.out, nlohmann::json(cfg));
  return 0;
}

// ---- graph ----

int run_graph(const fd::GraphConfig& cfg) {
  check_format(cfg.format, {"dot", "json"});
  if (!(cfg.gamma0 > 0.0))
    throw std::invalid_argument("gamma0 must be positive");
  Eigen::VectorXd rates;
  if (cfg.rates.empty()) {
    rates = Eigen::VectorXd::Constant(cfg.m, cfg.gamma0);
  } else {
    if (static_cast<int>(cfg.rates.size()) != cfg.m)
      throw std::invalid_argument("need exactly one rate per emitting mode");
    rates = Eigen::Map<const Eigen::VectorXd>(cfg.rates.data(),
                                              cfg.rates.size());
  }
  const fd::BasisDescriptor basis = fd::build_basis(
      cfg.n, 0, fd::StatisticsConfig::boson_to_fermion, -1, env_dim_cap());
  const fd::CollectiveModeSet modes = fd::dft_mode_set(cfg.n, rates);
  const fd::SectorGraph graph = fd::multimode_sector_graph(basis, modes);

  if (cfg.out.empty()) {
    std::ostringstream os;
    if (cfg.format == "dot")
      fd::write_dot(graph, os);
    else
      os << fd::graph_to_json(graph).dump(2) << '\n';
    write_text("", os.str());
  } else {
    std::ostringstream dot;
    fd::write_dot(graph, dot);
    write_text(cfg.out + ".dot", dot.str());
    write_text(cfg.out + ".json", fd::graph_to_json(graph).dump(2) + "\n");
  }
  emit_resolved_config(cfg.out, nlohmann::json(cfg));
  return 0;
}

// ---- evolve ----

struct ResolvedEngine {
  bool density = false;
};

ResolvedEngine resolve_engine(const fd::EvolveConfig& cfg,
                              fd::StatisticsConfig stats) {
  ResolvedEngine e;
  if (cfg.engine == "density") {
    e.density = true;
  } else if (cfg.engine == "moments") {
    if (stats == fd::StatisticsConfig::boson_to_boson)
      throw std::invalid_argument(
          "the moment engine is exact only for a fermionic emitted quantum; "
          "use --engine density for bb");
  } else if (cfg.engine == "auto") {
    e.density = stats == fd::StatisticsConfig::boson_to_boson;
  } else {
    throw std::invalid_argument("unknown engine '" + cfg.engine + "'");
  }
  return e;
}

fd::Trajectory run_evolution(const fd::EvolveConfig& cfg) {
  const fd::StatisticsConfig stats = fd::stats_from_tag(cfg.stats);
  const ResolvedEngine engine = resolve_engine(cfg, stats);
  fd::ModelParams params{cfg.n, cfg.g, cfg.kappa, cfg.kappa_phi};
  params.validate();
  if (cfg.initial != "all-parent" && cfg.initial != "product")
    throw std::invalid_argument("unknown initial state '" + cfg.initial + "'");

  const std::vector<double> grid = fd::make_time_grid(0.0, cfg.t_max, cfg.points);
  fd::OdeOptions ode;
  ode.rtol = cfg.rtol;
  ode.atol = cfg.atol;

  const fd::RegimeLabel regime = fd::regime_classify(params);
  std::cerr << "# regime: cavity=" << fd::regime_tag(regime.cavity)
            << " dephasing=" << fd::regime_tag(regime.dephasing);
  if (regime.borderline) std::cerr << " (borderline: " << regime.note << ")";
  std::cerr << "\n";

  if (engine.density) {
    const fd::BasisDescriptor basis =
        fd::build_basis(cfg.n, 1, stats, -1, env_dim_cap());
    fd::StateVector psi =
        cfg.initial == "product"
            ? fd::product_superposition_state(
                  basis, resolve_phases(cfg.n, cfg.phi, {}))
            : fd::all_parent_state(basis);
    fd::DensityEvolveOptions opts;
    opts.ode = ode;
    opts.dim_cap = std::min<std::int64_t>(opts.dim_cap, env_dim_cap());
    return fd::evolve_density_matrix(basis, fd::density_from_state(psi), params,
                                     grid, opts);
  }

  fd::MomentState m0;
  if (cfg.initial == "product") {
    const fd::BasisDescriptor basis =
        fd::build_basis(cfg.n, 1, stats, -1, env_dim_cap());
    m0 = fd::moments_from_state(
        basis, fd::product_superposition_state(
                   basis, resolve_phases(cfg.n, cfg.phi, {})));
  } else {
    m0 = fd::MomentState{1.0, 0.0, 0.0, 0.0, 1.0};
  }
  return fd::evolve_moments(m0, params, grid, ode);
}

int run_evolve(const fd::EvolveConfig& cfg) {
  check_format(cfg.format, {"csv", "json"});
  const fd::Trajectory trj = run_evolution(cfg);
  std::ostringstream os;
  if (cfg.format == "csv") {
    fd::write_trajectory_csv(trj, os);
  } else {
    nlohmann::json j = fd::trajectory_to_json(trj);
    j["config"] = cfg;
    os << j.dump(2) << '\n';
  }
  write_text(cfg.out, os.str());
  emit_resolved_config(cfg.out, nlohmann::json(cfg));
  return 0;
}

// ---- sweep ----

struct SweepRow {
  double value = 0.0;
  double final_n_c = 0.0;
  double final_n_nu = 0.0;
  double final_n_bar = 0.0;
  double final_emitted = 0.0;
  double decay_rate_n_c = 0.0;
  double decay_rate_n_bar = 0.0;
  double omega_estimate = 0.0;
};

fd::EvolveConfig apply_param(fd::EvolveConfig base, const std::string& name,
                             double value) {
  if (name == "n") {
    const double r = std::round(value);
    if (std::abs(value - r) > 1e-9 || r < 1)
      throw std::invalid_argument("sweep over n requires positive integers");
    base.n = static_cast<int>(r);
  } else if (name == "g") {
    base.g = value;
  } else if (name == "kappa") {
    base.kappa = value;
  } else if (name == "kappa_phi") {
    base.kappa_phi = value;
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + name +
                                "' (expected n, g, kappa or kappa_phi)");
  }
  return base;
}

int run_sweep(const fd::SweepConfig& cfg) {
  check_format(cfg.format, {"csv", "json"});
  if (cfg.values.empty())
    throw std::invalid_argument("sweep needs at least one value");
  if (cfg.threads < 0)
    throw std::invalid_argument("threads must be >= 0");

  // Validate every run configuration up front so a bad value fails the whole
  // sweep before any work starts.
  for (double v : cfg.values) {
    const fd::EvolveConfig run = apply_param(cfg.evolve, cfg.param, v);
    fd::ModelParams p{run.n, run.g, run.kappa, run.kappa_phi};
    p.validate();
    resolve_engine(run, fd::stats_from_tag(run.stats));
  }

  std::vector<SweepRow> rows(cfg.values.size());
  std::vector<std::string> errors(cfg.values.size());
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int threads = cfg.threads == 0
                          ? std::max(1, std::min<int>(hw, cfg.values.size()))
                          : std::min<int>(cfg.threads, cfg.values.size());

  auto worker = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < cfg.values.size(); i += stride) {
      try {
        fd::EvolveConfig run = apply_param(cfg.evolve, cfg.param, cfg.values[i]);
        const fd::Trajectory trj = run_evolution(run);
        SweepRow& row = rows[i];
        row.value = cfg.values[i];
        row.final_n_c = trj.n_c.back();
        row.final_n_nu = trj.n_nu.back();
        row.final_n_bar = trj.n_bar.back();
        row.final_emitted = trj.emitted.back();
        row.decay_rate_n_c = fd::fit_decay_rate(trj.times, trj.n_c);
        row.decay_rate_n_bar = fd::fit_decay_rate(trj.times, trj.n_bar);
        row.omega_estimate =
            fd::estimate_collective_frequency(trj.times, trj.n_c);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (threads <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
      pool.emplace_back(worker, std::size_t(w), std::size_t(threads));
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("sweep value " + fd::format_g17(cfg.values[i]) +
                               " failed: " + errors[i]);

  std::ostringstream os;
  if (cfg.format == "csv") {
    os << cfg.param
       << ",final_n_C,final_n_nu,final_n_bar,final_emitted,"
          "decay_rate_n_C,decay_rate_n_bar,omega_estimate\n";
    for (const auto& r : rows)
      os << fd::format_g17(r.value) << ',' << fd::format_g17(r.final_n_c) << ','
         << fd::format_g17(r.final_n_nu) << ',' << fd::format_g17(r.final_n_bar)
         << ',' << fd::format_g17(r.final_emitted) << ','
         << fd::format_g17(r.decay_rate_n_c) << ','
         << fd::format_g17(r.decay_rate_n_bar) << ','
         << fd::format_g17(r.omega_estimate) << '\n';
  } else {
    nlohmann::json j;
    j["param"] = cfg.param;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"value", r.value},
                           {"final_n_C", r.final_n_c},
                           {"final_n_nu", r.final_n_nu},
                           {"final_n_bar", r.final_n_bar},
                           {"final_emitted", r.final_emitted},
                           {"decay_rate_n_C", r.decay_rate_n_c},
                           {"decay_rate_n_bar", r.decay_rate_n_bar},
                           {"omega_estimate", r.omega_estimate}});
    j["config"] = cfg;
    os << j.dump(2) << '\n';
  }
  write_text(cfg.out, os.str());
  emit_resolved_config(cfg.out, nlohmann::json(cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Collective emission toolkit for chains whose decay products are "
      "fermionic or photonic"};
  app.require_subcommand(1);

  auto rates_cfg = std::make_shared<fd::RatesConfig>();
  auto classify_cfg = std::make_shared<fd::ClassifyConfig>();
  auto graph_cfg = std::make_shared<fd::GraphConfig>();
  auto evolve_cfg = std::make_shared<fd::EvolveConfig>();
  auto sweep_cfg = std::make_shared<fd::SweepConfig>();

  std::string rates_config_path, classify_config_path, graph_config_path,
      evolve_config_path, sweep_config_path;
  std::string rates_phi = "0", evolve_phi = "0";

  CLI::App* rates = app.add_subcommand(
      "rates", "Closed-form and numeric emission rates of product states");
  rates->add_option("--config", rates_config_path, "JSON config file");
  rates->add_option("-n,--n", rates_cfg->n, "number of sites");
  rates->add_option("--gamma0", rates_cfg->gamma0, "single-site rate");
  rates->add_option("--stats", rates_cfg->stats, "bf | fb | bb");
  rates->add_option("--phi", rates_phi, "phase gradient (accepts 'pi')");
  rates->add_option("--phases", rates_cfg->phases, "explicit per-site phases");
  rates->add_option("--format", rates_cfg->format, "csv | json");
  rates->add_option("-o,--out", rates_cfg->out, "output file");

  CLI::App* classify = app.add_subcommand(
      "classify", "Bright/dark decomposition of the collective jump");
  classify->add_option("--config", classify_config_path, "JSON config file");
  classify->add_option("-n,--n", classify_cfg->n, "number of sites");
  classify->add_option("--gamma0", classify_cfg->gamma0, "single-site rate");
  classify->add_option("--stats", classify_cfg->stats, "bf | fb | bb");
  classify->add_option("--format", classify_cfg->format, "csv | json");
  classify->add_option("-o,--out", classify_cfg->out, "output file");

  CLI::App* graph = app.add_subcommand(
      "graph", "Multimode sector graph over collective occupations");
  graph->add_option("--config", graph_config_path, "JSON config file");
  graph->add_option("-n,--n", graph_cfg->n, "number of sites");
  graph->add_option("-m,--m", graph_cfg->m, "number of emitting modes");
  graph->add_option("--gamma0", graph_cfg->gamma0, "default per-mode rate");
  graph->add_option("--rates", graph_cfg->rates, "explicit per-mode rates");
  graph->add_option("--format", graph_cfg->format, "dot | json (stdout mode)");
  graph->add_option("-o,--out", graph_cfg->out,
                    "output prefix (writes .dot and .json)");

  CLI::App* evolve = app.add_subcommand(
      "evolve", "Time evolution of the cavity-coupled chain");
  evolve->add_option("--config", evolve_config_path, "JSON config file");
  evolve->add_option("-n,--n", evolve_cfg->n, "number of sites");
  evolve->add_option("-g,--g", evolve_cfg->g, "site-mode coupling");
  evolve->add_option("--kappa", evolve_cfg->kappa, "mode loss rate");
  evolve->add_option("--kappa-phi", evolve_cfg->kappa_phi, "site dephasing rate");
  evolve->add_option("--t-max", evolve_cfg->t_max, "final time");
  evolve->add_option("--points", evolve_cfg->points, "output samples");
  evolve->add_option("--rtol", evolve_cfg->rtol, "relative tolerance");
  evolve->add_option("--atol", evolve_cfg->atol, "absolute tolerance");
  evolve->add_option("--engine", evolve_cfg->engine, "auto | moments | density");
  evolve->add_option("--stats", evolve_cfg->stats, "bf | fb | bb");
  evolve->add_option("--initial", evolve_cfg->initial, "all-parent | product");
  evolve->add_option("--phi", evolve_phi, "product-state phase gradient");
  evolve->add_option("--format", evolve_cfg->format, "csv | json");
  evolve->add_option("-o,--out", evolve_cfg->out, "output file");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run evolve across one parameter and summarize each run");
  sweep->add_option("--config", sweep_config_path, "JSON config file");
  sweep->add_option("-n,--n", sweep_cfg->evolve.n, "number of sites");
  sweep->add_option("-g,--g", sweep_cfg->evolve.g, "site-mode coupling");
  sweep->add_option("--kappa", sweep_cfg->evolve.kappa, "mode loss rate");
  sweep->add_option("--kappa-phi", sweep_cfg->evolve.kappa_phi,
                    "site dephasing rate");
  sweep->add_option("--t-max", sweep_cfg->evolve.t_max, "final time");
  sweep->add_option("--points", sweep_cfg->evolve.points, "output samples");
  sweep->add_option("--rtol", sweep_cfg->evolve.rtol, "relative tolerance");
  sweep->add_option("--atol", sweep_cfg->evolve.atol, "absolute tolerance");
  sweep->add_option("--engine", sweep_cfg->evolve.engine,
                    "auto | moments | density");
  sweep->add_option("--stats", sweep_cfg->evolve.stats, "bf | fb | bb");
  sweep->add_option("--initial", sweep_cfg->evolve.initial,
                    "all-parent | product");
  sweep->add_option("--param", sweep_cfg->param, "n | g | kappa | kappa_phi");
  sweep->add_option("--values", sweep_cfg->values, "swept values");
  sweep->add_option("--threads", sweep_cfg->threads,
                    "worker threads (0 = hardware)");
  sweep->add_option("--format", sweep_cfg->format, "csv | json");
  sweep->add_option("-o,--out", sweep_cfg->out, "output file");

  try {
    app.parse(argc, argv);

    // Overlay order for every subcommand: struct defaults, then the config
    // file, then any flag the user explicitly passed.
    if (rates->parsed()) {
      if (!rates_config_path.empty()) {
        fd::RatesConfig merged = *rates_cfg;
        fd::load_config_file(rates_config_path).get_to(merged);
        if (!rates->count("--n")) rates_cfg->n = merged.n;
        if (!rates->count("--gamma0")) rates_cfg->gamma0 = merged.gamma0;
        if (!rates->count("--stats")) rates_cfg->stats = merged.stats;
        if (!rates->count("--phi")) rates_cfg->phi = merged.phi;
        if (!rates->count("--phases")) rates_cfg->phases = merged.phases;
        if (!rates->count("--format")) rates_cfg->format = merged.format;
        if (!rates->count("--out")) rates_cfg->out = merged.out;
      }
      if (rates->count("--phi")) rates_cfg->phi = fd::parse_phase(rates_phi);
      return run_rates(*rates_cfg);
    }
    if (classify->parsed()) {
      if (!classify_config_path.empty()) {
        fd::ClassifyConfig merged = *classify_cfg;
        fd::load_config_file(classify_config_path).get_to(merged);
        if (!classify->count("--n")) classify_cfg->n = merged.n;
        if (!classify->count("--gamma0")) classify_cfg->gamma0 = merged.gamma0;
        if (!classify->count("--stats")) classify_cfg->stats = merged.stats;
        if (!classify->count("--format")) classify_cfg->format = merged.format;
        if (!classify->count("--out")) classify_cfg->out = merged.out;
      }
      return run_classify(*classify_cfg);
    }
    if (graph->parsed()) {
      if (!graph_config_path.empty()) {
        fd::GraphConfig merged = *graph_cfg;
        fd::load_config_file(graph_config_path).get_to(merged);
        if (!graph->count("--n")) graph_cfg->n = merged.n;
        if (!graph->count("--m")) graph_cfg->m = merged.m;
        if (!graph->count("--gamma0")) graph_cfg->gamma0 = merged.gamma0;
        if (!graph->count("--rates")) graph_cfg->rates = merged.rates;
        if (!graph->count("--format")) graph_cfg->format = merged.format;
        if (!graph->count("--out")) graph_cfg->out = merged.out;
      }
      return run_graph(*graph_cfg);
    }
    if (evolve->parsed()) {
      if (!evolve_config_path.empty()) {
        fd::EvolveConfig merged = *evolve_cfg;
        fd::load_config_file(evolve_config_path).get_to(merged);
        if (!evolve->count("--n")) evolve_cfg->n = merged.n;
        if (!evolve->count("--g")) evolve_cfg->g = merged.g;
        if (!evolve->count("--kappa")) evolve_cfg->kappa = merged.kappa;
        if (!evolve->count("--kappa-phi")) evolve_cfg->kappa_phi = merged.kappa_phi;
        if (!evolve->count("--t-max")) evolve_cfg->t_max = merged.t_max;
        if (!evolve->count("--points")) evolve_cfg->points = merged.points;
        if (!evolve->count("--rtol")) evolve_cfg->rtol = merged.rtol;
        if (!evolve->count("--atol")) evolve_cfg->atol = merged.atol;
        if (!evolve->count("--engine")) evolve_cfg->engine = merged.engine;
        if (!evolve->count("--stats")) evolve_cfg->stats = merged.stats;
        if (!evolve->count("--initial")) evolve_cfg->initial = merged.initial;
        if (!evolve->count("--phi")) evolve_cfg->phi = merged.phi;
        if (!evolve->count("--format")) evolve_cfg->format = merged.format;
        if (!evolve->count("--out")) evolve_cfg->out = merged.out;
      }
      if (evolve->count("--phi")) evolve_cfg->phi = fd::parse_phase(evolve_phi);
      return run_evolve(*evolve_cfg);
    }
    if (sweep->parsed()) {
      if (!sweep_config_path.empty()) {
        fd::SweepConfig merged = *sweep_cfg;
        fd::load_config_file(sweep_config_path).get_to(merged);
        if (!sweep->count("--n")) sweep_cfg->evolve.n = merged.evolve.n;
        if (!sweep->count("--g")) sweep_cfg->evolve.g = merged.evolve.g;
        if (!sweep->count("--kappa")) sweep_cfg->evolve.kappa = merged.evolve.kappa;
        if (!sweep->count("--kappa-phi"))
          sweep_cfg->evolve.kappa_phi = merged.evolve.kappa_phi;
        if (!sweep->count("--t-max")) sweep_cfg->evolve.t_max = merged.evolve.t_max;
        if (!sweep->count("--points")) sweep_cfg->evolve.points = merged.evolve.points;
        if (!sweep->count("--rtol")) sweep_cfg->evolve.rtol = merged.evolve.rtol;
        if (!sweep->count("--atol")) sweep_cfg->evolve.atol = merged.evolve.atol;
        if (!sweep->count("--engine")) sweep_cfg->evolve.engine = merged.evolve.engine;
        if (!sweep->count("--stats")) sweep_cfg->evolve.stats = merged.evolve.stats;
        if (!sweep->count("--initial"))
          sweep_cfg->evolve.initial = merged.evolve.initial;
        if (!sweep->count("--param")) sweep_cfg->param = merged.param;
        if (!sweep->count("--values")) sweep_cfg->values = merged.values;
        if (!sweep->count("--threads")) sweep_cfg->threads = merged.threads;
        if (!sweep->count("--format")) sweep_cfg->format = merged.format;
        if (!sweep->count("--out")) sweep_cfg->out = merged.out;
      }
      return run_sweep(*sweep_cfg);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const fd::IoError& e) {
    std::cerr << "error (io): " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (invalid argument): " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error (capacity): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 3;
  }
}
