#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <random>
#include <sstream>

#include "thoma/diffusion_sim.hpp"
#include "thoma/thoma_num.hpp"

using namespace thoma;
using Catch::Approx;

namespace {

const ThomaPoint w0({0.5, 0.3}, {0.2});

SimState random_state(std::mt19937_64& rng, Truncation t) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> e(t.indices().size() + 1);
  double tot = 0;
  for (auto& v : e) tot += (v = -std::log(u(rng) + 1e-300));
  SimState s{t, {}};
  for (std::size_t i = 0; i + 1 < e.size(); ++i) s.x.push_back(e[i] / tot);
  if (u(rng) < 0.3) {  // land on the face sum = 1
    double sx = s.sum();
    for (auto& v : s.x) v /= sx;
  }
  return s;
}

Eigen::MatrixXd as_matrix(const std::vector<double>& a, std::size_t d) {
  Eigen::MatrixXd m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = a[i * d + j];
  return m;
}

}  // namespace

TEST_CASE("drift in modified coordinates", "[dynamics]") {
  const NumParams prm{1.0, 2.0, 2.0};
  const SimState st = SimState::from_point(w0, {2, 1});
  const auto b = drift_nat(st, prm);
  REQUIRE(b.size() == 3);
  CHECK(b[1] == Approx(3.5714286).epsilon(1e-7));  // slot order: b1, a1, a2
  CHECK(b[1] == Approx(nat_limit_alpha1(w0, prm)));

  const NumParams p2{0.7, 0.4, 1.1};
  const SimState one{{1, 0}, {0.6}};
  CHECK(drift_nat(one, p2)[0] == Approx(0.4 - 0.7 - 1.1 / 0.7 * 0.6));

  // pair contributions are antisymmetric in the modified coordinates
  const NumParams p0{1.3, 0.0, 0.0};
  const SimState two{{1, 1}, {0.2, 0.5}};
  const auto bb = drift_nat(two, p0);
  const double xa = 0.5, xb_t = -1.3 * 0.2;
  CHECK(bb[1] - (-1.3) == Approx(2 * 1.3 * 0.2 / (xa - xb_t)));
  CHECK(bb[0] - (1.3 / 1.3) == Approx(2 * 1.3 * 0.5 / (xb_t - xa)));
}

TEST_CASE("diffusion matrix is positive semidefinite", "[dynamics][property]") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 2000; ++i) {
    const Truncation t{1 + i % 4, i % 3};
    const double th = std::array{0.5, 1.0, 2.0}[i % 3];
    const SimState s = random_state(rng, t);
    const std::size_t d = s.x.size();
    const Eigen::MatrixXd a = as_matrix(diffusion_matrix(s, th), d);
    CHECK((a - a.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("diffusion matrix structure", "[dynamics]") {
  const double th = 1.7;
  const SimState s = SimState::from_point(w0, {2, 1});
  const Eigen::MatrixXd a = as_matrix(diffusion_matrix(s, th), 3);
  CHECK(a(0, 0) == Approx(th * th * 0.2 - th * th * 0.04));
  CHECK(a(1, 1) == Approx(0.5 - 0.25));
  Eigen::Vector3d v(-1.0 / th, 1.0, 1.0);
  CHECK((a * v).norm() < 1e-14);
}

TEST_CASE("noise factor squares to the diffusion matrix", "[dynamics][property]") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 300; ++i) {
    const Truncation t{1 + i % 3, i % 3};
    const double th = 0.5 + 0.5 * (i % 4);
    const SimState s = random_state(rng, t);
    const std::size_t d = s.x.size();
    const auto signs = slot_signs(t, th);
    Eigen::MatrixXd sigma(d, d);
    std::vector<double> e(d), out(d);
    for (std::size_t k = 0; k < d; ++k) {
      std::fill(e.begin(), e.end(), 0.0);
      e[k] = 1.0;
      apply_noise_factor(s, signs, e.data(), out.data());
      for (std::size_t r = 0; r < d; ++r) sigma(r, k) = out[r];
    }
    const Eigen::MatrixXd a = as_matrix(diffusion_matrix(s, th), d);
    CHECK((sigma * sigma.transpose() - a).norm() < 1e-12);
  }
}

TEST_CASE("paths stay in the simplex and are reproducible", "[simulate][property]") {
  SimConfig cfg;
  cfg.trunc = {3, 2};
  cfg.paths = 30;
  cfg.t_end = 0.05;
  cfg.dt = 1e-3;
  cfg.params = {1.0, 2.0, 2.0};
  const SimState start = SimState::from_point(ThomaPoint({0.3, 0.1, 0.05}, {0.04, 0.01}), cfg.trunc);
  std::ostringstream a, b;
  bool inside = true;
  auto sink_to = [&](std::ostringstream& os) {
    return [&](std::size_t p, double t, const SimState& st) {
      write_csv_frame(os, p, t, st);
      for (double v : st.x) inside = inside && v >= 0.0;
      inside = inside && st.sum() <= 1.0 + 1e-9;
    };
  };
  simulate(cfg, start, sink_to(a));
  simulate(cfg, start, sink_to(b));
  CHECK(inside);
  CHECK(a.str() == b.str());
  cfg.seed = 2;
  std::ostringstream c;
  simulate(cfg, start, sink_to(c));
  CHECK(a.str() != c.str());
}

TEST_CASE("zero state drifts off the boundary", "[simulate]") {
  SimConfig cfg;
  cfg.trunc = {1, 1};
  cfg.paths = 1;
  cfg.dt = 1e-3;
  cfg.params = {1.0, 0.5, 1.0};
  PathStepper stepper(cfg, 0);
  SimState st{cfg.trunc, {0.0, 0.0}};
  stepper.step(st, cfg.dt);
  // with zero coordinates the noise vanishes and only |drift * dt| remains
  CHECK(st.x[0] == Approx((0.5 + 1.0) * 1e-3));
  CHECK(st.x[1] == Approx((1.0 - 0.5) * 1e-3));
}

TEST_CASE("coinciding coordinates exhaust the substep budget", "[simulate]") {
  SimConfig cfg;
  cfg.trunc = {2, 0};
  cfg.params = {1.0, 1.0, 1.0};
  PathStepper stepper(cfg, 0);
  SimState st{cfg.trunc, {0.3, 0.3}};
  try {
    stepper.step(st, cfg.dt);
    FAIL("expected substep limit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::substep_limit);
  }
}

TEST_CASE("one-step generator consistency", "[simulate][statistical]") {
  SimConfig cfg;
  cfg.trunc = {3, 2};
  cfg.paths = 20000;
  cfg.dt = 1e-4;
  cfg.seed = 7;
  cfg.params = {1.0, 2.0, 2.0};
  const SimState x0 = SimState::from_point(ThomaPoint({0.35, 0.2, 0.1}, {0.25, 0.1}), cfg.trunc);
  const MomentPoly q1 = moment_q(1);
  for (const MomentPoly& f : {q1, moment_q(2), q1 * q1}) {
    const auto r = generator_consistency(f, x0, cfg);
    CHECK(std::fabs(r.z) < 4.0);
  }
  const auto c = generator_consistency(MomentPoly::constant({}, Coeff(1L)), x0, cfg);
  CHECK(c.exact == 0.0);
  CHECK(c.mc_mean == 0.0);
}

TEST_CASE("trajectory output formats", "[output]") {
  CHECK(trajectory_csv_header({2, 1}) == "path_id,t,x_-1,x_1,x_2,sum_x");
  std::ostringstream os;
  write_binary_header(os, {2, 1}, "{}");
  write_binary_frame(os, 3, 0.5, SimState{{2, 1}, {0.25, 0.5, 0.125}});
  const std::string s = os.str();
  REQUIRE(s.size() == 6 + 24 + 2 + 8 * 6);
  CHECK(s.substr(0, 6) == "THSIM1");
  CHECK(static_cast<unsigned char>(s[6]) == 2);
  CHECK(static_cast<unsigned char>(s[14]) == 1);
  CHECK(static_cast<unsigned char>(s[22]) == 2);
  CHECK(s.substr(30, 2) == "{}");
  double v;
  std::memcpy(&v, s.data() + 32 + 8 * 5, 8);
  CHECK(v == 0.875);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("counter-based streams", "[rng]") {
  PathRng a(1, 5), b(1, 5), c(1, 6);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 16; ++i) va.push_back(a()), vb.push_back(b()), vc.push_back(c());
  CHECK(va == vb);
  CHECK(va != vc);
}
