#pragma once

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>
#include <toml.hpp>

#include "thoma/diffusion_sim/simulate.hpp"
#include "thoma/error.hpp"
#include "thoma/thoma_num/bounds.hpp"

namespace thoma {

namespace detail {

inline nlohmann::json toml_to_json(const toml::node& n) {
  if (const auto* t = n.as_table()) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : *t) j[std::string(k.str())] = toml_to_json(v);
    return j;
  }
  if (const auto* a = n.as_array()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : *a) j.push_back(toml_to_json(v));
    return j;
  }
  if (const auto* v = n.as_integer()) return v->get();
  if (const auto* v = n.as_floating_point()) return v->get();
  if (const auto* v = n.as_boolean()) return v->get();
  if (const auto* v = n.as_string()) return v->get();
  throw Error(ErrorCode::invalid_argument, "config: unsupported TOML value type");
}

}  // namespace detail

/// Parse a TOML document into JSON for uniform access.
inline nlohmann::json parse_toml(std::istream& in) {
  try {
    return detail::toml_to_json(toml::parse(in));
  } catch (const toml::parse_error& e) {
    const auto& at = e.source().begin;
    throw Error(ErrorCode::invalid_argument, "config line " + std::to_string(at.line) + ", column " +
                                                 std::to_string(at.column) + ": " + std::string(e.description()));
  }
}

/// Effective run configuration.
struct RunConfig {
  NumParams params{1.0, 0.0, 1.0, false};
  std::vector<double> grid = default_c_grid();
  double tol_constant = 20.0;
  SimConfig sim{};
  std::uint64_t seed = 1;

  nlohmann::json to_json() const {
    return {{"params", {{"theta", params.theta}, {"s1", params.s1}, {"s2", params.s2},
                        {"enforce_admissibility", params.enforce_admissibility}}},
            {"grid", {{"C", grid}, {"tol_constant", tol_constant}}},
            {"sim", {{"n", sim.trunc.n}, {"m", sim.trunc.m}, {"dt", sim.dt}, {"t_end", sim.t_end},
                     {"paths", sim.paths}, {"gap_threshold", sim.gap_threshold},
                     {"max_halvings", sim.max_halvings}, {"record_every", sim.record_every}}},
            {"seed", seed}};
  }
};

/// Apply a parsed TOML document on top of `cfg`.
inline void apply_config(RunConfig& cfg, const nlohmann::json& doc) {
  try {
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("params")) {
      const auto& p = doc["params"];
      cfg.params.theta = p.value("theta", cfg.params.theta);
      cfg.params.s1 = p.value("s1", cfg.params.s1);
      cfg.params.s2 = p.value("s2", cfg.params.s2);
      cfg.params.enforce_admissibility = p.value("enforce_admissibility", cfg.params.enforce_admissibility);
    }
    if (doc.contains("grid")) {
      const auto& g = doc["grid"];
      if (g.contains("C")) cfg.grid = g["C"].get<std::vector<double>>();
      cfg.tol_constant = g.value("tol_constant", cfg.tol_constant);
    }
    if (doc.contains("sim")) {
      const auto& s = doc["sim"];
      cfg.sim.trunc.n = s.value("n", cfg.sim.trunc.n);
      cfg.sim.trunc.m = s.value("m", cfg.sim.trunc.m);
      cfg.sim.dt = s.value("dt", cfg.sim.dt);
      cfg.sim.t_end = s.value("t_end", cfg.sim.t_end);
      cfg.sim.paths = s.value("paths", cfg.sim.paths);
      cfg.sim.gap_threshold = s.value("gap_threshold", cfg.sim.gap_threshold);
      cfg.sim.max_halvings = s.value("max_halvings", cfg.sim.max_halvings);
      cfg.sim.record_every = s.value("record_every", cfg.sim.record_every);
      cfg.seed = s.value("seed", cfg.seed);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("config: ") + e.what());
  }
}

inline RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open config " + path);
    apply_config(cfg, parse_toml(in));
  }
  return cfg;
}

/// THOMA_SEED, when set, overrides the configured seed.
inline void apply_seed_env(RunConfig& cfg) {
  if (const char* s = std::getenv("THOMA_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (!end || *end != '\0' || *s == '\0') throw Error(ErrorCode::invalid_argument, "THOMA_SEED is not an integer");
    cfg.seed = v;
  }
  cfg.sim.seed = cfg.seed;
}

}  // namespace thoma
