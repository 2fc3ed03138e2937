// Acceptance runner: one PASS/FAIL line per criterion.
#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "../support/random_poly.hpp"
#include "thoma/thoma.hpp"

using namespace thoma;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && secs > time_limit) {
    o.pass = false;
    o.detail += " runtime over " + std::to_string(time_limit) + " s";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] AC-%02d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

Outcome from_reports(const std::vector<IdentityReport>& reps) {
  Outcome o;
  std::size_t cases = 0;
  for (const auto& r : reps) {
    cases += r.cases.size();
    if (r.cases.empty() || !r.pass()) {
      o.pass = false;
      o.detail += r.identity + " failed " + std::to_string(r.failures()) + "; ";
    }
  }
  o.detail += std::to_string(cases) + " exact cases";
  return o;
}

void expect(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) o.detail = what;
  o.pass = o.pass && ok;
}

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

// Independent arithmetic for the alpha_1 generator limit.
double alpha1_limit(const ThomaPoint& p, double th, double s1, double s2) {
  const double a1 = p.alpha()[0];
  double sum = 0;
  for (std::size_t i = 1; i < p.alpha().size(); ++i) sum += p.alpha()[i] / (a1 - p.alpha()[i]);
  for (double b : p.beta()) sum += b / (a1 - (-th * b));
  return -th + s1 - s2 / th * a1 + 2 * th * sum;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(THOMA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  VerifyRanges full;  // q_1..q_6, grading <= 10, levels <= 3

  criterion(1, "product rule", 10.0, [&] { return from_reports({verify_product_rule(full)}); });

  criterion(2, "degenerate family", 1.0, [&] { return from_reports({verify_petrov_degeneration(full)}); });

  criterion(3, "shift consistency", 0.0, [&] {
    VerifyRanges r;
    r.max_level = 3;
    r.max_k = 6;
    return from_reports({verify_consistent_shift(r)});
  });

  criterion(4, "natural-coordinate carre du champ", 0.0, [&] {
    VerifyRanges r;
    r.max_k = 5;
    r.max_trunc = 6;
    return from_reports({verify_gamma_nat_vs_moment(r)});
  });

  criterion(5, "natural-coordinate generator", 0.0, [&] {
    VerifyRanges r;
    r.max_trunc = 5;
    return from_reports({verify_a_nat_vs_a(r)});
  });

  criterion(6, "bracket lemmas", 0.0, [&] {
    VerifyRanges r;
    r.max_k = 5;
    r.max_level = 2;
    return from_reports({verify_lem111(r), verify_lem222(r)});
  });

  criterion(7, "bounds suite", 0.0, [&] {
    std::mt19937_64 rng(2024);
    std::vector<ThomaPoint> pts;
    for (int i = 0; i < 1000; ++i) pts.push_back(random_truncated_point(rng));
    Outcome o;
    std::size_t checks = 0;
    for (double th : {0.5, 1.0, 2.0}) {
      const BoundsReport r = check_bounds(pts, default_c_grid(), th);
      checks += r.checks;
      expect(o, r.pass(), "theta=" + fmt(th) + ": " + std::to_string(r.violations.size()) + " violations");
    }
    for (double C : {1e5, -1e5})
      for (const auto& p : pts) expect(o, std::isfinite(chi(p, C, 1.0)), "non-finite chi at C=" + fmt(C));
    if (o.pass) o.detail = std::to_string(checks) + " inequality checks, 0 violations";
    return o;
  });

  criterion(8, "limit suite", 0.0, [&] {
    std::mt19937_64 rng(808);
    Outcome o;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const ThomaPoint p = random_gapped_point(rng);
      for (double th : {0.5, 1.0, 2.0}) {
        const double a = p.alpha_at(1), b = p.beta_at(1);
        auto near = [&](double v, double want, double tol, const std::string& what) {
          worst = std::max(worst, std::fabs(v - want) / tol);
          expect(o, std::fabs(v - want) <= tol,
                 what + " point " + std::to_string(i) + " theta=" + fmt(th) + ": " + fmt(v) + " vs " + fmt(want));
        };
        near(chi(p, 1e4, th), a, 1e-3, "chi+");
        near(chi(p, -1e4, th), -th * b, 1e-3, "chi-");
        near(gamma_CD_num(p, 1e4, 1e4, th), a - a * a, 1e-2, "gammaCD+");
        near(gamma_CD_num(p, -1e4, -1e4, th), th * th * (b - b * b), 1e-2, "gammaCD-");
        for (const ShiftLevel lv : {ShiftLevel{0, 0}, ShiftLevel{1, 0}, ShiftLevel{0, 1}, ShiftLevel{1, 1}}) {
          const ThomaPoint sp = p.shifted(lv);
          const double sa = sp.alpha_at(1), sb = sp.beta_at(1);
          for (int k : {1, 2}) {
            const double qk = eval_q(sp, k, th);
            near(gamma_C_num(p, GammaTarget::q(k), 1e4, th, lv), (k + 1) * (std::pow(sa, k + 1) - sa * qk), 1e-2,
                 "gammaC(q" + std::to_string(k) + ")+");
            near(gamma_C_num(p, GammaTarget::q(k), -1e4, th, lv),
                 -th * (k + 1) * (std::pow(-th, k) * std::pow(sb, k + 1) - sb * qk), 1e-2,
                 "gammaC(q" + std::to_string(k) + ")-");
          }
          for (int x : {1, -1}) {
            if ((x > 0 && lv.N < 1) || (x < 0 && lv.M < 1)) continue;
            const double xi = x > 0 ? p.alpha_at(1) : p.beta_at(1);
            near(gamma_C_num(p, GammaTarget::x(x), 1e4, th, lv), -sa * xi, 1e-2, "gammaC(x)+");
            near(gamma_C_num(p, GammaTarget::x(x), -1e4, th, lv), th * sb * xi, 1e-2, "gammaC(x)-");
          }
        }
      }
    }
    if (o.pass) o.detail = "worst error / tolerance " + fmt(worst);
    return o;
  });

  criterion(9, "generator on chi, large C", 30.0, [&] {
    const NumParams prm{1.0, 2.0, 2.0};
    std::mt19937_64 rng(909);
    Outcome o;
    double worst_lim = 0, worst_tail = 0;
    for (int i = 0; i < 20; ++i) {
      const ThomaPoint p = random_simplex_point(rng);
      const double lim = alpha1_limit(p, 1.0, 2.0, 2.0);
      const double d = std::fabs(a_chi_num(p, 1e5, prm) - lim);
      const double tail = std::fabs(a_chi_num(p, 2e4, prm) - a_chi_num(p, 1e4, prm));
      worst_lim = std::max(worst_lim, d);
      worst_tail = std::max(worst_tail, tail);
      expect(o, d <= 0.1, "point " + std::to_string(i) + " limit error " + fmt(d));
      expect(o, tail <= 10.0 / 1e4, "point " + std::to_string(i) + " tail " + fmt(tail));
    }
    const ThomaPoint ref({0.5, 0.3}, {0.2});
    const double want = 2 * (0.3 / 0.2 + 0.2 / 0.7);
    expect(o, std::fabs(alpha1_limit(ref, 1, 2, 2) - 3.5714286) <= 1e-3, "reference oracle");
    expect(o, std::fabs(nat_limit_alpha1(ref, prm) - want) <= 1e-3, "reference limit");
    expect(o, std::fabs(a_chi_num(ref, 1e5, prm) - want) <= 1e-2, "reference sweep");
    if (o.pass) o.detail = "max |A chi - limit| " + fmt(worst_lim) + ", max tail " + fmt(worst_tail);
    return o;
  });

  criterion(10, "simulator self-consistency", 300.0, [&] {
    Outcome o;
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> unit(0, 1);
    double min_eig = 0;
    for (int i = 0; i < 10000; ++i) {
      const Truncation t{1 + i % 5, i % 4};
      const double th = std::array{0.5, 1.0, 2.0}[i % 3];
      const std::size_t d = t.indices().size();
      std::vector<double> e(d + 1);
      double tot = 0;
      for (auto& v : e) tot += (v = -std::log(unit(rng) + 1e-300));
      if (i % 2 == 0) tot -= e.back();  // half the states on the face sum = 1
      SimState s{t, {}};
      for (std::size_t k = 0; k < d; ++k) s.x.push_back(e[k] / tot);
      const auto a = diffusion_matrix(s, th);
      Eigen::MatrixXd m(d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = a[r * d + c];
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff());
    }
    expect(o, min_eig >= -1e-10, "min eigenvalue " + fmt(min_eig));

    SimConfig cfg;
    cfg.trunc = {3, 2};
    cfg.params = {1.0, 2.0, 2.0};
    const SimState x0 = SimState::from_point(ThomaPoint({0.35, 0.2, 0.1}, {0.25, 0.1}), cfg.trunc);
    {
      SimConfig tc = cfg;
      tc.paths = 200;
      tc.dt = 1e-4;
      tc.t_end = 2e-2;
      bool inside = true;
      for (const SimState& start : {x0, SimState::from_point(ThomaPoint({0.3, 0.1}, {0.1}), tc.trunc)})
        simulate(tc, start, [&](std::size_t, double, const SimState& st) {
          for (double v : st.x) inside = inside && v >= 0.0;
          inside = inside && st.sum() <= 1.0 + 1e-9;
        });
      expect(o, inside, "path left the simplex");
    }
    cfg.dt = 1e-4;
    cfg.paths = 100000;
    const MomentPoly q1 = moment_q(1);
    const std::vector<std::pair<std::string, MomentPoly>> fs = {{"q1", q1}, {"q2", moment_q(2)}, {"q1^2", q1 * q1}};
    std::string zs;
    for (const auto& [name, f] : fs) {
      int bad = 0;
      double zmax = 0;
      for (int rep = 0; rep < 10; ++rep) {
        cfg.seed = 1000 + static_cast<std::uint64_t>(rep);
        const double z = generator_consistency(f, x0, cfg).z;
        zmax = std::max(zmax, std::fabs(z));
        if (std::fabs(z) > 3.0) ++bad;
      }
      expect(o, bad <= 2, name + ": " + std::to_string(bad) + " of 10 repetitions with |z| > 3");
      zs += " " + name + " max|z|=" + fmt(zmax);
    }
    if (o.pass) o.detail = "min eigenvalue " + fmt(min_eig) + ";" + zs;
    return o;
  });

  criterion(11, "round trip and determinism", 0.0, [&] {
    Outcome o;
    std::mt19937_64 rng(1111);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      bool same = false;
      std::string text;
      switch (i % 3) {
        case 0: {
          const auto p = testing::random_moment_poly(rng);
          text = to_string(p);
          same = to_raw(parse_poly(text)).terms() == p.as(RawFamily{}).terms();
          break;
        }
        case 1: {
          const auto p = testing::random_ext_poly(rng, {i % 4, (i / 4) % 4});
          text = to_string(p);
          same = parse_raw(text).terms() == p.as(RawFamily{p.family().level}).terms();
          break;
        }
        default: {
          const auto p = testing::random_nat_poly(rng, {1 + i % 5, i % 4});
          text = to_string(p);
          same = to_raw(parse_poly(text)).terms() == p.as(RawFamily{}).terms();
        }
      }
      ++checked;
      expect(o, same, "round trip failed on: " + text);
    }
    const RunConfig cfg;
    const auto rep = [&] {
      auto j = report_header("verify", cfg);
      j["report"] = to_json(verify_lem111(VerifyRanges{}));
      return dump_report(j);
    };
    expect(o, rep() == rep(), "in-process report differs");
    const std::string dir = "acceptance_out";
    std::filesystem::create_directories(dir);
    const std::vector<std::string> cmds = {
        "verify --identity product-rule --max-k 4 --max-grading 8 --out ",
        "sweep --limit bounds --points 50 --report ",
        "sweep --limit chi-pos --alpha 0.5,0.3 --beta 0.2 --report ",
        "simulate --mode trajectories --alpha 0.3,0.2,0.1 --beta 0.2,0.1 --paths 5 --t-end 0.002 --out ",
        "simulate --mode trajectories --format bin --alpha 0.3,0.2,0.1 --beta 0.2,0.1 --paths 5 --t-end 0.002 --out "};
    for (std::size_t c = 0; c < cmds.size(); ++c) {
      const std::string a = dir + "/r" + std::to_string(c) + "a", b = dir + "/r" + std::to_string(c) + "b";
      const int ra = run_cli(cmds[c] + a), rb = run_cli(cmds[c] + b);
      expect(o, ra == 0 && rb == 0, "cli exit codes " + std::to_string(ra) + "," + std::to_string(rb));
      const std::string sa = slurp(a);
      expect(o, !sa.empty() && sa == slurp(b), "reports differ: " + cmds[c]);
    }
    if (o.pass) o.detail = std::to_string(checked) + " polynomials, " + std::to_string(cmds.size()) + " cli reports";
    return o;
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
