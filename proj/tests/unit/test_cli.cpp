#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "../support/random_poly.hpp"
#include "thoma/thoma.hpp"

using namespace thoma;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(THOMA_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  const int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class P>
bool same_terms(const RawPoly& r, const P& p) {
  if (r.size() != p.size()) return false;
  auto it = r.terms().begin();
  for (const auto& [m, c] : p.terms()) {
    if (!(it->first == m) || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

ParseError parse_failure(const std::string& src) {
  try {
    (void)parse_poly(src);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << src);
  return ParseError("", 0, 0, 0);
}

}  // namespace

TEST_CASE("expression parser", "[parser]") {
  const auto g = std::get<MomentPoly>(parse_poly("4*(q2 - q1^2)"));
  CHECK(g == gamma(moment_q(1), moment_q(1)));
  const auto e = std::get<ExtPoly>(parse_poly("qs3@1,0 + a1^4"));
  CHECK(e.family().level == ShiftLevel{1, 0});
  CHECK(e == ext_qs({1, 0}, 3) + ext_x({1, 0}, 1).pow(4));
  const auto n = std::get<NatPoly>(parse_poly("a2*b1 - 1/2"));
  CHECK(n.family().trunc == Truncation{2, 1});
  CHECK(std::get<MomentPoly>(parse_poly("-q1^2")) == -(moment_q(1) * moment_q(1)));
  CHECK(std::get<MomentPoly>(parse_poly("theta^-1*s2*q1")) ==
        moment_q(1) * (Coeff::param(Param::theta, -1) * Coeff::param(Param::s2)));
  CHECK(std::get<MomentPoly>(parse_poly("2 - 3 - -1")).is_zero());
  CHECK(std::get<MomentPoly>(parse_poly("pa*ptau")) ==
        MomentPoly::constant({}, Coeff::param(Param::a) * Coeff::param(Param::tau)));
}

TEST_CASE("parser diagnostics", "[parser]") {
  CHECK(parse_failure("q1 +").offset() == 4);
  const ParseError multi = parse_failure("q1 +\n  zz");
  CHECK(multi.line() == 2);
  CHECK(multi.column() == 3);
  CHECK(parse_failure("foo").offset() == 0);
  (void)parse_failure("q");
  (void)parse_failure("qs3");
  (void)parse_failure("q1^-1");
  (void)parse_failure("(q1");
  (void)parse_failure("q1 $ q2");
  (void)parse_failure("qs1@0,0 + qs1@1,0");
  CHECK_THROWS_AS(parse_poly("qs1@0,0 + a1"), Error);
  CHECK_THROWS_AS(parse_poly("q1 + a1"), Error);
}

TEST_CASE("printed polynomials parse back", "[parser][property]") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    const auto m = testing::random_moment_poly(rng);
    CHECK(same_terms(parse_raw(to_string(m)), m));
    const ShiftLevel l{i % 3, (i / 3) % 3};
    const auto e = testing::random_ext_poly(rng, l);
    CHECK(same_terms(parse_raw(to_string(e)), e));
    const auto n = testing::random_nat_poly(rng, {1 + i % 4, i % 3});
    CHECK(same_terms(parse_raw(to_string(n)), n));
  }
}

TEST_CASE("configuration files", "[config]") {
  std::istringstream in(
      "# run\nseed = 42\n[params]\ntheta = 0.5 # half\ns1 = 2\n[grid]\nC = [1.0, -10, 1e3]\n"
      "tol_constant = 5\n[sim]\nn = 2\nm = 1\ndt = 1e-3\npaths = 7\n");
  const auto doc = parse_toml(in);
  CHECK(doc["params"]["theta"] == 0.5);
  CHECK(doc["grid"]["C"].size() == 3);
  RunConfig cfg;
  apply_config(cfg, doc);
  CHECK(cfg.params.theta == 0.5);
  CHECK(cfg.params.s1 == 2.0);
  CHECK(cfg.grid == std::vector<double>{1.0, -10.0, 1e3});
  CHECK(cfg.tol_constant == 5.0);
  CHECK(cfg.sim.trunc == Truncation{2, 1});
  CHECK(cfg.sim.paths == 7);
  CHECK(cfg.seed == 42);
  ::setenv("THOMA_SEED", "99", 1);
  apply_seed_env(cfg);
  ::unsetenv("THOMA_SEED");
  CHECK(cfg.seed == 99);
  CHECK(cfg.sim.seed == 99);
  std::istringstream bad("[params\n");
  CHECK_THROWS_AS(parse_toml(bad), Error);
}

TEST_CASE("reports", "[report]") {
  const RunConfig cfg;
  const auto h = report_header("verify", cfg);
  CHECK(h["schema"] == "thoma-report/1");
  CHECK(h["header"]["version"] == kVersion);
  CHECK(h["header"].contains("config"));
  const ThomaPoint p({0.5, 0.3}, {0.2});
  const ThomaPoint back = point_from_json(point_to_json(p));
  CHECK(back.alpha() == p.alpha());
  CHECK(back.beta() == p.beta());
}

TEST_CASE("command line tool", "[cli]") {
  const auto a = run_cli("apply --op A --expr q2 --theta sym");
  CHECK(a.code == 0);
  CHECK(a.out == "3*(2 - 2*theta + s1)*q1 - 3*(2 + theta^-1*s2)*q2 + 3*theta\n");
  const auto b = run_cli("apply --op A --expr q2 --theta 1");
  CHECK(b.code == 0);
  CHECK(b.out == "3*s1*q1 - 3*(2 + s2)*q2 + 3\n");
  CHECK(run_cli("apply --op A --expr 'q1 +'").code == 2);
  CHECK(run_cli("verify --identity nope").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("num --quantity chi --alpha 0.3,0.5 --C 1").code == 2);
  const auto q = run_cli("num --quantity q --alpha 0.5,0.3 --beta 0.2 --k 2 --theta 1");
  CHECK(q.code == 0);
  CHECK(nlohmann::json::parse(q.out)["value"].get<double>() == Catch::Approx(0.16));
  CHECK(run_cli("num --quantity a-chi --alpha 0.4,0.4,0.2 --C 100").code == 2);

  const auto v = run_cli("verify --identity product-rule --max-k 3 --max-grading 6");
  CHECK(v.code == 0);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j["schema"] == "thoma-report/1");
  CHECK(j.contains("header"));
}

TEST_CASE("reports are byte-identical across runs", "[cli]") {
  const std::string dir = "cli_test_out";
  std::filesystem::create_directories(dir);
  for (int r = 0; r < 2; ++r) {
    const std::string sfx = std::to_string(r);
    CHECK(run_cli("sweep --limit bounds --points 20 --report " + dir + "/b" + sfx + ".json").code == 0);
    CHECK(run_cli("simulate --mode trajectories --alpha 0.3,0.2,0.1 --beta 0.2,0.1 --paths 3 --t-end 0.001 --out " + dir + "/t" + sfx + ".csv")
              .code == 0);
  }
  const std::string b0 = slurp(dir + "/b0.json"), t0 = slurp(dir + "/t0.csv");
  CHECK(!b0.empty());
  CHECK(t0.rfind("# tool=thoma", 0) == 0);
  CHECK(b0 == slurp(dir + "/b1.json"));
  CHECK(t0 == slurp(dir + "/t1.csv"));
  ::setenv("THOMA_SEED", "5", 1);
  CHECK(run_cli("simulate --mode trajectories --alpha 0.3,0.2,0.1 --beta 0.2,0.1 --paths 3 --t-end 0.001 --out " + dir + "/t2.csv").code == 0);
  ::unsetenv("THOMA_SEED");
  CHECK(t0 != slurp(dir + "/t2.csv"));
}
