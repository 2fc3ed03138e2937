// thoma: command-line front end for the thoma library.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thoma/thoma.hpp"

namespace {

using thoma::Error;
using thoma::ErrorCode;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitRuntime = 3;

struct Common {
  std::string config;
  std::string theta, s1, s2;
  std::string out;
  bool enforce = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "TOML config file");
  sub->add_option("--theta", c.theta, "theta: 'sym' or a number");
  sub->add_option("--s1", c.s1, "s1 = z + z': 'sym' or a number");
  sub->add_option("--s2", c.s2, "s2 = z z': 'sym' or a number");
  sub->add_option("--out", c.out, "output file (written atomically)");
  sub->add_flag("--enforce-admissibility", c.enforce, "reject s2 <= 0");
}

mpq_class parse_rational(const std::string& s, const char* what) {
  try {
    const auto raw = thoma::parse_raw(s);
    if (raw.is_zero()) return 0;
    const auto& t = raw.terms();
    if (t.size() == 1 && t.begin()->first.is_unit() && t.begin()->second.is_constant())
      return t.begin()->second.constant_term();
  } catch (const thoma::ParseError&) {
  }
  const double d = [&] {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, std::string("bad value for ") + what + ": " + s);
    }
  }();
  return mpq_class(d);
}

double parse_real(const std::string& s, const char* what) { return parse_rational(s, what).get_d(); }

/// Resolve configuration: file, then flags, then THOMA_SEED.
thoma::RunConfig resolve(const Common& c, bool numeric) {
  thoma::RunConfig cfg = thoma::load_config(c.config);
  auto bind = [&](const std::string& v, double& dst, const char* what) {
    if (v.empty()) return;
    if (v == "sym") {
      if (numeric) throw Error(ErrorCode::invalid_argument, std::string("numeric command needs a value for ") + what);
      return;
    }
    dst = parse_real(v, what);
  };
  bind(c.theta, cfg.params.theta, "theta");
  bind(c.s1, cfg.params.s1, "s1");
  bind(c.s2, cfg.params.s2, "s2");
  if (c.enforce) cfg.params.enforce_admissibility = true;
  thoma::apply_seed_env(cfg);
  if (numeric) {
    const std::string warn = cfg.params.check();
    if (!warn.empty()) std::cerr << "warning: " << warn << "\n";
  }
  return cfg;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty())
    std::cout << text;
  else
    thoma::write_atomic(c.out, text);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(parse_real(item, "list entry"));
  return v;
}

thoma::ShiftLevel parse_level(const std::string& s) {
  const auto v = parse_list(s);
  if (v.size() != 2 || v[0] < 0 || v[1] < 0) throw Error(ErrorCode::invalid_argument, "level must be N,M");
  return {int(v[0]), int(v[1])};
}

struct PointArgs {
  std::string file, alpha, beta;
};

void add_point(CLI::App* sub, PointArgs& p) {
  sub->add_option("--point", p.file, "JSON point {\"alpha\":[...],\"beta\":[...]}");
  sub->add_option("--alpha", p.alpha, "comma-separated alpha");
  sub->add_option("--beta", p.beta, "comma-separated beta");
}

thoma::ThomaPoint load_point(const PointArgs& p) {
  if (!p.file.empty()) {
    std::ifstream in(p.file);
    if (!in) throw Error(ErrorCode::io_error, "cannot open point file " + p.file);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::invalid_point, std::string("point file: ") + e.what());
    }
    return thoma::point_from_json(j);
  }
  if (p.alpha.empty() && p.beta.empty()) throw Error(ErrorCode::invalid_argument, "a point is required");
  return thoma::ThomaPoint(parse_list(p.alpha), parse_list(p.beta));
}

/// Bind numeric parameter flags into a symbolic coefficient.
thoma::Coeff bind_coeff(thoma::Coeff c, const Common& o) {
  auto bind = [&](const std::string& v, thoma::Param p, const char* what) {
    if (v.empty() || v == "sym") return;
    c = c.substitute(p, thoma::Coeff(parse_rational(v, what)));
  };
  bind(o.theta, thoma::Param::theta, "theta");
  bind(o.s1, thoma::Param::s1, "s1");
  bind(o.s2, thoma::Param::s2, "s2");
  return c;
}

template <class P>
std::string bound_string(const P& p, const Common& o) {
  return thoma::to_string(p.map_coeffs([&](const thoma::Coeff& c) { return bind_coeff(c, o); }));
}

thoma::Truncation parse_trunc(const std::string& s) {
  const auto l = parse_level(s);
  return {l.N, l.M};
}

thoma::GammaTarget parse_target(const std::string& s) {
  if (s.size() >= 2 && (s[0] == 'a' || s[0] == 'b' || s[0] == 'q')) {
    try {
      const int i = std::stoi(s.substr(1));
      if (i <= 0) throw std::invalid_argument(s);
      if (s[0] == 'q') return thoma::GammaTarget::q(i);
      return thoma::GammaTarget::x(s[0] == 'a' ? i : -i);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::invalid_argument, "target must be a<i>, b<j> or q<k>: " + s);
}

std::string csv_header_block(const std::string& command, const thoma::RunConfig& cfg) {
  return "# tool=thoma version=" + std::string(thoma::kVersion) + " seed=" + std::to_string(cfg.seed) +
         " command=" + command + "\n# config=" + cfg.to_json().dump() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generator and Dirichlet-form laboratory on the Thoma simplex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", thoma::kVersion);

  // apply
  Common apply_c;
  std::string apply_op = "A", apply_expr, apply_trunc;
  auto* apply = app.add_subcommand("apply", "apply an operator to a polynomial");
  add_common(apply, apply_c);
  apply->add_option("--op", apply_op, "A | A-petrov | degenerate | A-nat")
      ->check(CLI::IsMember({"A", "A-petrov", "degenerate", "A-nat"}));
  apply->add_option("--expr", apply_expr, "moment polynomial")->required();
  apply->add_option("--trunc", apply_trunc, "n,m for A-nat");

  // gamma
  Common gamma_c;
  std::string gamma_u, gamma_v;
  auto* gamma = app.add_subcommand("gamma", "carre du champ of two polynomials of the same family");
  add_common(gamma, gamma_c);
  gamma->add_option("--u", gamma_u)->required();
  gamma->add_option("--v", gamma_v)->required();

  // verify
  Common verify_c;
  std::string verify_id = "all";
  thoma::VerifyRanges ranges;
  auto* verify = app.add_subcommand("verify", "run exact identity checks");
  add_common(verify, verify_c);
  verify->add_option("--identity", verify_id, "identity name or 'all'");
  verify->add_option("--max-k", ranges.max_k);
  verify->add_option("--max-grading", ranges.max_grading);
  verify->add_option("--max-level", ranges.max_level);
  verify->add_option("--max-trunc", ranges.max_trunc);
  verify->add_option("--max-petrov-k", ranges.max_petrov_k);

  // num
  Common num_c;
  PointArgs num_p;
  std::string num_q = "chi", num_level = "0,0", num_target = "q1";
  double num_C = 1.0, num_D = 0.0;
  int num_k = 1;
  auto* num = app.add_subcommand("num", "evaluate a numeric quantity at a point");
  add_common(num, num_c);
  add_point(num, num_p);
  num->add_option("--quantity", num_q, "q | Q-exp | chi | gammaCD | gammaC | a-chi | nat-limit | drift")
      ->check(CLI::IsMember({"q", "Q-exp", "chi", "gammaCD", "gammaC", "a-chi", "nat-limit", "drift"}));
  num->add_option("--C", num_C);
  num->add_option("--D", num_D, "defaults to C");
  num->add_option("--k", num_k);
  num->add_option("--level", num_level, "N,M");
  num->add_option("--target", num_target, "a<i> | b<j> | q<k>");

  // sweep
  Common sweep_c;
  PointArgs sweep_p;
  std::string sweep_limit, sweep_grid = "default", sweep_level = "0,0", sweep_target = "q1", sweep_report;
  std::size_t sweep_points = 1000;
  auto* sweep = app.add_subcommand("sweep", "limit sweep over a C grid, or the bounds suite");
  add_common(sweep, sweep_c);
  add_point(sweep, sweep_p);
  sweep->add_option("--limit", sweep_limit, "limit name or 'bounds'")->required();
  sweep->add_option("--grid", sweep_grid, "'default' or comma-separated C values");
  sweep->add_option("--level", sweep_level, "N,M");
  sweep->add_option("--target", sweep_target, "a<i> | b<j> | q<k> (gammaC-v)");
  sweep->add_option("--points", sweep_points, "random points for 'bounds'");
  sweep->add_option("--report", sweep_report, "JSON summary path (default stdout)");

  // simulate
  Common sim_c;
  PointArgs sim_p;
  std::string sim_mode = "trajectories", sim_format = "csv", sim_f = "q1";
  int sim_n = -1, sim_m = -1;
  double sim_dt = 0, sim_tend = 0;
  std::size_t sim_paths = 0, sim_every = 0;
  auto* sim = app.add_subcommand("simulate", "Euler-Maruyama simulation of the truncated diffusion");
  add_common(sim, sim_c);
  add_point(sim, sim_p);
  sim->add_option("--mode", sim_mode, "trajectories | omega0 | consistency")
      ->check(CLI::IsMember({"trajectories", "omega0", "consistency"}));
  sim->add_option("--format", sim_format, "csv | bin")->check(CLI::IsMember({"csv", "bin"}));
  sim->add_option("--f", sim_f, "moment polynomial for consistency mode");
  sim->add_option("--n", sim_n);
  sim->add_option("--m", sim_m);
  sim->add_option("--dt", sim_dt);
  sim->add_option("--t-end", sim_tend);
  sim->add_option("--paths", sim_paths);
  sim->add_option("--record-every", sim_every);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*apply) {
      resolve(apply_c, false);
      const auto poly = thoma::parse_poly(apply_expr);
      const auto* u = std::get_if<thoma::MomentPoly>(&poly);
      if (!u) throw Error(ErrorCode::invalid_argument, "apply expects a polynomial in q_k");
      std::string text;
      if (apply_op == "A") text = bound_string(thoma::apply_A(*u), apply_c);
      if (apply_op == "A-petrov") text = bound_string(thoma::apply_A_petrov(*u), apply_c);
      if (apply_op == "degenerate") text = bound_string(thoma::degenerate_to_petrov(thoma::apply_A(*u)), apply_c);
      if (apply_op == "A-nat") {
        if (apply_trunc.empty()) throw Error(ErrorCode::invalid_argument, "A-nat needs --trunc n,m");
        text = bound_string(thoma::apply_A_nat(*u, parse_trunc(apply_trunc)), apply_c);
      }
      emit(apply_c, text + "\n");
      return kExitOk;
    }

    if (*gamma) {
      resolve(gamma_c, false);
      const auto u = thoma::parse_poly(gamma_u), v = thoma::parse_poly(gamma_v);
      if (u.index() != v.index()) throw Error(ErrorCode::level_mismatch, "u and v belong to different families");
      std::string text;
      if (auto* a = std::get_if<thoma::MomentPoly>(&u)) text = bound_string(thoma::gamma(*a, std::get<thoma::MomentPoly>(v)), gamma_c);
      if (auto* a = std::get_if<thoma::ExtPoly>(&u)) text = bound_string(thoma::gamma_NM(*a, std::get<thoma::ExtPoly>(v)), gamma_c);
      if (auto* a = std::get_if<thoma::NatPoly>(&u)) {
        auto b = std::get<thoma::NatPoly>(v);
        const thoma::Truncation t{std::max(a->family().trunc.n, b.family().trunc.n),
                                  std::max(a->family().trunc.m, b.family().trunc.m)};
        text = bound_string(thoma::gamma_alpha_beta(a->as(thoma::NatFamily{t}), b.as(thoma::NatFamily{t})), gamma_c);
      }
      emit(gamma_c, text + "\n");
      return kExitOk;
    }

    if (*verify) {
      const auto cfg = resolve(verify_c, false);
      std::vector<std::string> ids;
      if (verify_id == "all")
        ids = thoma::identity_names();
      else
        ids = {verify_id};
      json rep = thoma::report_header("verify", cfg);
      rep["ranges"] = {{"max_k", ranges.max_k}, {"max_grading", ranges.max_grading},
                       {"max_level", ranges.max_level}, {"max_trunc", ranges.max_trunc},
                       {"max_petrov_k", ranges.max_petrov_k}};
      std::size_t failures = 0;
      json results = json::array();
      for (const auto& id : ids) {
        const auto r = thoma::verify_identity(id, ranges);
        failures += r.failures();
        results.push_back(thoma::to_json(r));
      }
      rep["results"] = results;
      rep["failures"] = failures;
      emit(verify_c, thoma::dump_report(rep));
      return failures == 0 ? kExitOk : kExitCheckFailed;
    }

    if (*num) {
      const auto cfg = resolve(num_c, true);
      const auto p = load_point(num_p);
      const double th = cfg.params.theta;
      const auto lvl = parse_level(num_level);
      const double D = num->count("--D") ? num_D : num_C;
      double value = 0.0;
      json extra = json::object();
      if (num_q == "q") value = thoma::eval_q(p.shifted(lvl), num_k, th);
      if (num_q == "Q-exp") value = thoma::q_exp(p, num_C, th, lvl).to_double();
      if (num_q == "chi") value = thoma::chi(p, num_C, th, lvl);
      if (num_q == "gammaCD") value = thoma::gamma_CD_num(p, num_C, D, th, lvl);
      if (num_q == "gammaC") value = thoma::gamma_C_num(p, parse_target(num_target), num_C, th, lvl);
      if (num_q == "a-chi") {
        const auto t = thoma::a_chi_terms(p, num_C, cfg.params);
        value = t.total();
        extra = {{"term1", t.t1}, {"term2", t.t2}, {"term3", t.t3}, {"p1", t.p1}, {"p2", t.p2}};
      }
      if (num_q == "nat-limit") value = thoma::nat_limit_alpha1(p, cfg.params);
      if (num_q == "drift") {
        const thoma::Truncation t{int(p.alpha().size()), int(p.beta().size())};
        extra["drift"] = thoma::drift_nat(thoma::SimState::from_point(p, t), cfg.params);
      }
      json rep = thoma::report_header("num", cfg);
      rep["quantity"] = num_q;
      rep["point"] = thoma::point_to_json(p);
      rep["inputs"] = {{"C", num_C}, {"D", D}, {"k", num_k}, {"level", num_level}, {"target", num_target}};
      rep["value"] = value;
      if (!extra.empty()) rep["details"] = extra;
      emit(num_c, thoma::dump_report(rep));
      return kExitOk;
    }

    if (*sweep) {
      auto cfg = resolve(sweep_c, true);
      if (sweep_grid != "default") cfg.grid = parse_list(sweep_grid);
      std::string csv = csv_header_block("sweep", cfg) + "point_id,C,value,claimed_limit,abs_err\n";
      json rep = thoma::report_header("sweep", cfg);
      bool ok = true;
      if (sweep_limit == "bounds") {
        std::mt19937_64 rng(cfg.seed);
        std::vector<thoma::ThomaPoint> pts;
        for (std::size_t i = 0; i < sweep_points; ++i) pts.push_back(thoma::random_truncated_point(rng));
        const auto r = thoma::check_bounds(pts, cfg.grid, cfg.params.theta);
        rep["bounds"] = thoma::to_json(r);
        ok = r.pass();
        for (const auto& v : r.violations)
          csv += std::to_string(v.point_index) + "," + thoma::format_double(v.C) + "," +
                 thoma::format_double(v.lhs_log) + "," + thoma::format_double(v.rhs_log) + "," +
                 thoma::format_double(v.lhs_log - v.rhs_log) + "\n";
      } else {
        const auto p = load_point(sweep_p);
        thoma::LimitOptions opt;
        opt.level = parse_level(sweep_level);
        opt.target = parse_target(sweep_target);
        opt.tol_constant = cfg.tol_constant;
        const auto r = thoma::limit_sweep(p, sweep_limit, cfg.grid, cfg.params, opt);
        for (const auto& row : r.rows)
          csv += "0," + thoma::format_double(row.C) + "," + thoma::format_double(row.value) + "," +
                 thoma::format_double(row.claimed) + "," + thoma::format_double(row.abs_err) + "\n";
        rep["point"] = thoma::point_to_json(p);
        rep["sweep"] = thoma::to_json(r);
        ok = r.converged();
      }
      rep["status"] = ok ? "pass" : "fail";
      emit(sweep_c, csv);
      if (sweep_report.empty())
        std::cerr << thoma::dump_report(rep);
      else
        thoma::write_atomic(sweep_report, thoma::dump_report(rep));
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*sim) {
      auto cfg = resolve(sim_c, true);
      auto& sc = cfg.sim;
      if (sim_n >= 0) sc.trunc.n = sim_n;
      if (sim_m >= 0) sc.trunc.m = sim_m;
      if (sim_dt > 0) sc.dt = sim_dt;
      if (sim_tend > 0) sc.t_end = sim_tend;
      if (sim_paths > 0) sc.paths = sim_paths;
      if (sim_every > 0) sc.record_every = sim_every;
      sc.params = cfg.params;
      if (!(sc.dt > 0) || sc.trunc.n < 0 || sc.trunc.m < 0 || sc.trunc.n + sc.trunc.m == 0)
        throw Error(ErrorCode::invalid_argument, "simulation needs dt > 0 and a nonempty truncation");
      const auto p = load_point(sim_p);
      const auto start = thoma::SimState::from_point(p, sc.trunc);
      if (sim_mode == "trajectories") {
        std::ostringstream os;
        if (sim_format == "csv") {
          os << csv_header_block("simulate", cfg) << thoma::trajectory_csv_header(sc.trunc) << "\n";
          thoma::simulate(sc, start, [&](std::size_t path, double t, const thoma::SimState& st) {
            thoma::write_csv_frame(os, path, t, st);
          });
        } else {
          thoma::write_binary_header(os, sc.trunc, thoma::report_header("simulate", cfg).dump());
          thoma::simulate(sc, start, [&](std::size_t path, double t, const thoma::SimState& st) {
            thoma::write_binary_frame(os, path, t, st);
          });
        }
        emit(sim_c, os.str());
        return kExitOk;
      }
      json rep = thoma::report_header("simulate", cfg);
      rep["mode"] = sim_mode;
      rep["start"] = thoma::point_to_json(p);
      bool ok = true;
      if (sim_mode == "omega0") {
        const auto r = thoma::omega0_report(sc, start);
        json frames = json::array();
        for (const auto& f : r.frames) frames.push_back({{"t", f.t}, {"q05", f.q05}, {"q50", f.q50}, {"q95", f.q95}});
        rep["frames"] = frames;
        rep["median_nondecreasing_after_transient"] = r.median_nondecreasing_after_transient;
        rep["stays_near_one"] = r.stays_near_one;
      } else {
        const auto poly = thoma::parse_poly(sim_f);
        const auto* f = std::get_if<thoma::MomentPoly>(&poly);
        if (!f) throw Error(ErrorCode::invalid_argument, "--f must be a polynomial in q_k");
        const auto r = thoma::generator_consistency(*f, start, sc);
        rep["f"] = thoma::to_string(*f);
        rep["consistency"] = {{"mc_mean", r.mc_mean}, {"exact", r.exact}, {"std_error", r.std_error}, {"z", r.z}};
        ok = std::fabs(r.z) <= 3.0;
        rep["status"] = ok ? "pass" : "fail";
      }
      emit(sim_c, thoma::dump_report(rep));
      return ok ? kExitOk : kExitCheckFailed;
    }
  } catch (const thoma::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::substep_limit:
      case ErrorCode::io_error:
        return kExitRuntime;
      default:
        return kExitBadInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
