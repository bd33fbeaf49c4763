// config.hpp — run configurations, their JSON round-trip, and CLI helpers
#pragma once

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fermidicke {

// I/O failures carry their own type so the CLI can map them to a dedicated
// exit code without guessing from message text.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts plain floating-point literals plus the convenience forms
// "pi", "-pi" and "<x>pi" (e.g. "0.5pi") for phase-valued options.
inline double parse_phase(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty phase value");
  std::string s = text;
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s.erase(s.size() - 2);
    if (s.empty() || s == "+") return factor;
    if (s == "-") return -factor;
  }
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse phase value '" + text + "'");
  }
  if (used != s.size())
    throw std::invalid_argument("cannot parse phase value '" + text + "'");
  return v * factor;
}

namespace detail {
inline void check_keys(const nlohmann::json& j,
                       std::initializer_list<const char*> allowed,
                       const char* what) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) { ok = true; break; }
    if (!ok)
      throw std::invalid_argument(std::string(what) + ": unknown config key '" +
                                  item.key() + "'");
  }
}
template <class T>
void read_if(const nlohmann::json& j, const char* key, T& into) {
  if (j.contains(key)) j.at(key).get_to(into);
}
}  // namespace detail

struct RatesConfig {
  int n = 4;
  double gamma0 = 1.0;
  std::string stats = "bf";
  double phi = 0.0;
  std::vector<double> phases;  // overrides the linear profile j * phi if set
  std::string format = "csv";
  std::string out;
};

inline void to_json(nlohmann::json& j, const RatesConfig& c) {
  j = {{"n", c.n},         {"gamma0", c.gamma0}, {"stats", c.stats},
       {"phi", c.phi},     {"phases", c.phases}, {"format", c.format},
       {"out", c.out}};
}

inline void from_json(const nlohmann::json& j, RatesConfig& c) {
  detail::check_keys(j, {"n", "gamma0", "stats", "phi", "phases", "format", "out"},
                     "rates");
  detail::read_if(j, "n", c.n);
  detail::read_if(j, "gamma0", c.gamma0);
  detail::read_if(j, "stats", c.stats);
  detail::read_if(j, "phi", c.phi);
  detail::read_if(j, "phases", c.phases);
  detail::read_if(j, "format", c.format);
  detail::read_if(j, "out", c.out);
}

struct ClassifyConfig {
  int n = 4;
  double gamma0 = 1.0;
  std::string stats = "bf";
  std::string format = "csv";
  std::string out;
};

inline void to_json(nlohmann::json& j, const ClassifyConfig& c) {
  j = {{"n", c.n},
       {"gamma0", c.gamma0},
       {"stats", c.stats},
       {"format", c.format},
       {"out", c.out}};
}

inline void from_json(const nlohmann::json& j, ClassifyConfig& c) {
  detail::check_keys(j, {"n", "gamma0", "stats", "format", "out"}, "classify");
  detail::read_if(j, "n", c.n);
  detail::read_if(j, "gamma0", c.gamma0);
  detail::read_if(j, "stats", c.stats);
  detail::read_if(j, "format", c.format);
  detail::read_if(j, "out", c.out);
}

struct GraphConfig {
  int n = 4;
  int m = 2;
  double gamma0 = 1.0;
  std::vector<double> rates;  // per-mode; empty means gamma0 for every mode
  std::string format = "dot";
  std::string out;            // prefix: writes <out>.dot and <out>.json
};

inline void to_json(nlohmann::json& j, const GraphConfig& c) {
  j = {{"n", c.n},         {"m", c.m},           {"gamma0", c.gamma0},
       {"rates", c.rates}, {"format", c.format}, {"out", c.out}};
}

inline void from_json(const nlohmann::json& j, GraphConfig& c) {
  detail::check_keys(j, {"n", "m", "gamma0", "rates", "format", "out"}, "graph");
  detail::read_if(j, "n", c.n);
  detail::read_if(j, "m", c.m);
  detail::read_if(j, "gamma0", c.gamma0);
  detail::read_if(j, "rates", c.rates);
  detail::read_if(j, "format", c.format);
  detail::read_if(j, "out", c.out);
}

struct EvolveConfig {
  int n = 4;
  double g = 1.0;
  double kappa = 0.0;
  double kappa_phi = 0.0;
  double t_max = 10.0;
  int points = 201;
  double rtol = 1e-8;
  double atol = 1e-10;
  std::string engine = "auto";  // auto | moments | density
  std::string stats = "bf";
  std::string initial = "all-parent";  // all-parent | product
  double phi = 0.0;                    // phase gradient of the product start
  std::string format = "csv";
  std::string out;
};

inline void to_json(nlohmann::json& j, const EvolveConfig& c) {
  j = {{"n", c.n},           {"g", c.g},
       {"kappa", c.kappa},   {"kappa_phi", c.kappa_phi},
       {"t_max", c.t_max},   {"points", c.points},
       {"rtol", c.rtol},     {"atol", c.atol},
       {"engine", c.engine}, {"stats", c.stats},
       {"initial", c.initial}, {"phi", c.phi},
       {"format", c.format}, {"out", c.out}};
}

inline void from_json(const nlohmann::json& j, EvolveConfig& c) {
  detail::check_keys(j,
                     {"n", "g", "kappa", "kappa_phi", "t_max", "points", "rtol",
                      "atol", "engine", "stats", "initial", "phi", "format",
                      "out"},
                     "evolve");
  detail::read_if(j, "n", c.n);
  detail::read_if(j, "g", c.g);
  detail::read_if(j, "kappa", c.kappa);
  detail::read_if(j, "kappa_phi", c.kappa_phi);
  detail::read_if(j, "t_max", c.t_max);
  detail::read_if(j, "points", c.points);
  detail::read_if(j, "rtol", c.rtol);
  detail::read_if(j, "atol", c.atol);
  detail::read_if(j, "engine", c.engine);
  detail::read_if(j, "stats", c.stats);
  detail::read_if(j, "initial", c.initial);
  detail::read_if(j, "phi", c.phi);
  detail::read_if(j, "format", c.format);
  detail::read_if(j, "out", c.out);
}

struct SweepConfig {
  EvolveConfig evolve;  // shared base run, its format/out fields unused
  std::string param = "kappa_phi";  // n | g | kappa | kappa_phi
  std::vector<double> values;
  int threads = 1;
  std::string format = "csv";
  std::string out;
};

inline void to_json(nlohmann::json& j, const SweepConfig& c) {
  j = {{"evolve", c.evolve}, {"param", c.param},  {"values", c.values},
       {"threads", c.threads}, {"format", c.format}, {"out", c.out}};
}

inline void from_json(const nlohmann::json& j, SweepConfig& c) {
  detail::check_keys(j, {"evolve", "param", "values", "threads", "format", "out"},
                     "sweep");
  detail::read_if(j, "evolve", c.evolve);
  detail::read_if(j, "param", c.param);
  detail::read_if(j, "values", c.values);
  detail::read_if(j, "threads", c.threads);
  detail::read_if(j, "format", c.format);
  detail::read_if(j, "out", c.out);
}

inline nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file '" + path +
                                "' is not valid JSON: " + e.what());
  }
}

}  // namespace fermidicke
