#pragma once

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "thoma/cli/config.hpp"
#include "thoma/error.hpp"
#include "thoma/operators/verify.hpp"
#include "thoma/thoma_num/limits.hpp"
#include "thoma/version.hpp"

namespace thoma {

/// Report skeleton with the common header block.
inline nlohmann::json report_header(const std::string& command, const RunConfig& cfg) {
  return {{"schema", kReportSchema},
          {"header", {{"tool", "thoma"}, {"version", kVersion}, {"seed", cfg.seed}, {"config", cfg.to_json()}}},
          {"command", command}};
}

inline nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases) {
    nlohmann::json j = {{"case", c.label}, {"status", c.pass ? "pass" : "fail"}};
    if (!c.pass) j["witness"] = c.witness;
    cases.push_back(std::move(j));
  }
  return {{"identity", r.identity}, {"cases", cases}, {"failures", r.failures()},
          {"status", r.pass() ? "pass" : "fail"}};
}

inline nlohmann::json to_json(const SweepReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"C", row.C}, {"value", row.value}, {"claimed_limit", row.claimed}, {"abs_err", row.abs_err}});
  return {{"limit", r.limit}, {"rows", rows}, {"tail_monotone", r.tail_monotone},
          {"within_tolerance", r.within_tolerance}, {"status", r.converged() ? "pass" : "fail"}};
}

inline nlohmann::json to_json(const BoundsReport& r) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : r.violations)
    v.push_back({{"inequality", x.inequality}, {"point", x.point_index}, {"C", x.C}, {"k", x.k},
                 {"lhs_log", x.lhs_log}, {"rhs_log", x.rhs_log}});
  return {{"checks", r.checks}, {"violations", v}, {"status", r.pass() ? "pass" : "fail"}};
}

/// Write `content` to `path` via a temporary file and rename.
inline void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp);
    out << content;
    if (!out.flush()) throw Error(ErrorCode::io_error, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::io_error, "cannot rename onto " + path);
  }
}

inline std::string dump_report(const nlohmann::json& j) { return j.dump(2) + "\n"; }

/// Parse {"alpha": [...], "beta": [...]}.
inline ThomaPoint point_from_json(const nlohmann::json& j) {
  try {
    return ThomaPoint(j.value("alpha", std::vector<double>{}), j.value("beta", std::vector<double>{}));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_point, std::string("point: ") + e.what());
  }
}

inline nlohmann::json point_to_json(const ThomaPoint& p) { return {{"alpha", p.alpha()}, {"beta", p.beta()}}; }

}  // namespace thoma
