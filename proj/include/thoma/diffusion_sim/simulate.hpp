#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "thoma/diffusion_sim/dynamics.hpp"
#include "thoma/diffusion_sim/rng.hpp"
#include "thoma/operators/natural_ops.hpp"

namespace thoma {

struct SimConfig {
  Truncation trunc{3, 2};
  double dt = 1e-4;
  double t_end = 1e-2;
  std::size_t paths = 100;
  std::uint64_t seed = 1;
  double gap_threshold = 1e-6;
  int max_halvings = 20;
  std::size_t record_every = 1;  // steps between recorded frames
  NumParams params{};
};

/// Euler-Maruyama stepper for a single path.
class PathStepper {
 public:
  PathStepper(const SimConfig& cfg, std::uint64_t path)
      : cfg_(cfg), rng_(cfg.seed, path), signs_(slot_signs(cfg.trunc, cfg.params.theta)) {
    const std::size_t d = signs_.size();
    xi_.resize(d);
    noise_.resize(d);
  }

  /// Advance by dt, splitting into halved substeps near coordinate collisions.
  void step(SimState& st, double dt) {
    double remaining = dt;
    while (remaining > 0.0) {
      const auto b = drift_nat(st, cfg_.params);
      double h = remaining;
      const double gap = min_pair_gap(st, signs_);
      if (gap < cfg_.gap_threshold) {
        double bmax = 0.0;
        for (double v : b) bmax = std::max(bmax, std::fabs(v));
        int halvings = 0;
        while (!(h * bmax <= 0.5 * gap)) {
          if (++halvings > cfg_.max_halvings)
            throw Error(ErrorCode::substep_limit, "coordinate collision: substep limit exceeded");
          h *= 0.5;
        }
      }
      euler(st, b, h);
      remaining = (h >= remaining) ? 0.0 : remaining - h;
    }
  }

 private:
  void euler(SimState& st, const std::vector<double>& b, double h) {
    const std::size_t d = st.x.size();
    for (auto& v : xi_) v = normal_(rng_);
    apply_noise_factor(st, signs_, xi_.data(), noise_.data());
    const double scale = std::sqrt(2.0 * h);
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double xt = signs_[i] * st.x[i] + b[i] * h + scale * noise_[i];
      st.x[i] = std::fabs(xt / signs_[i]);
      total += st.x[i];
    }
    if (total > 1.0)
      for (auto& v : st.x) v /= total;
  }

  const SimConfig& cfg_;
  PathRng rng_;
  std::normal_distribution<double> normal_;
  std::vector<double> signs_, xi_, noise_;
};

/// Frame sink: (path id, time, state).
using FrameSink = std::function<void(std::size_t, double, const SimState&)>;

struct SimSummary {
  std::size_t paths = 0;
  std::size_t steps = 0;
  double max_sum = 0.0;  // largest sum of coordinates seen
  double min_coord = 0.0;
};

/// Run all paths from `start`, streaming recorded frames (including t = 0) to `sink`.
inline SimSummary simulate(const SimConfig& cfg, const SimState& start, const FrameSink& sink) {
  SimSummary sum{cfg.paths, 0, start.sum(), 0.0};
  const auto nsteps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
  for (std::size_t p = 0; p < cfg.paths; ++p) {
    PathStepper stepper(cfg, p);
    SimState st = start;
    if (sink) sink(p, 0.0, st);
    for (std::size_t k = 1; k <= nsteps; ++k) {
      stepper.step(st, cfg.dt);
      sum.max_sum = std::max(sum.max_sum, st.sum());
      for (double v : st.x) sum.min_coord = std::min(sum.min_coord, v);
      if (sink && (k % std::max<std::size_t>(cfg.record_every, 1) == 0 || k == nsteps))
        sink(p, k * cfg.dt, st);
    }
    sum.steps += nsteps;
  }
  return sum;
}

/// Numeric value of q_k at a natural-coordinate state.
inline double state_moment(const SimState& st, int k, double theta) {
  if (k == 0) return 1.0;
  const auto idx = st.trunc.indices();
  double r = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    r += (idx[i] > 0 ? 1.0 : std::pow(-theta, k)) * std::pow(st.x[i], k + 1);
  return r;
}

inline double eval_moment_poly(const MomentPoly& f, const SimState& st, const NumParams& prm) {
  return f.evaluate([&](Gen g) { return state_moment(st, g.index, prm.theta); }, prm.values());
}

inline double eval_nat_poly(const NatPoly& f, const SimState& st, const NumParams& prm) {
  const auto idx = st.trunc.indices();
  return f.evaluate(
      [&](Gen g) {
        for (std::size_t i = 0; i < idx.size(); ++i)
          if (idx[i] == g.index) return st.x[i];
        return 0.0;
      },
      prm.values());
}

struct ConsistencyResult {
  double mc_mean = 0;  // mean of (f(X_dt) - f(x0)) / dt
  double exact = 0;    // (A^nat f)(x0)
  double std_error = 0;
  double z = 0;
};

/// Compare one-step Monte Carlo displacement of f with the generator applied to f.
inline ConsistencyResult generator_consistency(const MomentPoly& f, const SimState& x0, const SimConfig& cfg) {
  ConsistencyResult r;
  r.exact = eval_nat_poly(apply_A_nat(f, x0.trunc), x0, cfg.params);
  const double f0 = eval_moment_poly(f, x0, cfg.params);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t p = 0; p < cfg.paths; ++p) {
    PathStepper stepper(cfg, p);
    SimState st = x0;
    stepper.step(st, cfg.dt);
    const double v = (eval_moment_poly(f, st, cfg.params) - f0) / cfg.dt;
    const double delta = v - mean;
    mean += delta / double(p + 1);
    m2 += delta * (v - mean);
  }
  const double var = cfg.paths > 1 ? m2 / double(cfg.paths - 1) : 0.0;
  r.mc_mean = mean;
  r.std_error = std::sqrt(var / double(cfg.paths));
  r.z = r.std_error > 0 ? (mean - r.exact) / r.std_error : 0.0;
  return r;
}

struct Omega0Frame {
  double t;
  double q05, q50, q95;
};

struct Omega0Report {
  std::vector<Omega0Frame> frames;
  bool median_nondecreasing_after_transient = true;
  bool stays_near_one = true;
};

/// Quantiles of sum(x) over paths at every recorded time, with observational verdicts.
inline Omega0Report omega0_report(const SimConfig& cfg, const SimState& start, double near_tol = 1e-3) {
  std::vector<std::vector<double>> by_frame;
  std::vector<double> times;
  simulate(cfg, start, [&](std::size_t, double t, const SimState& st) {
    std::size_t f = 0;
    while (f < times.size() && times[f] != t) ++f;
    if (f == times.size()) {
      times.push_back(t);
      by_frame.emplace_back();
    }
    by_frame[f].push_back(st.sum());
  });
  Omega0Report rep;
  auto quant = [](std::vector<double> v, double q) {
    const auto k = static_cast<std::size_t>(q * double(v.size() - 1));
    std::nth_element(v.begin(), v.begin() + k, v.end());
    return v[k];
  };
  for (std::size_t f = 0; f < times.size(); ++f)
    rep.frames.push_back({times[f], quant(by_frame[f], 0.05), quant(by_frame[f], 0.5), quant(by_frame[f], 0.95)});
  const std::size_t transient = rep.frames.size() / 10;
  for (std::size_t f = transient + 1; f < rep.frames.size(); ++f)
    if (rep.frames[f].q50 < rep.frames[f - 1].q50 - 1e-12) rep.median_nondecreasing_after_transient = false;
  for (const auto& fr : rep.frames)
    if (std::fabs(fr.q05 - 1.0) > near_tol || std::fabs(fr.q95 - 1.0) > near_tol) rep.stays_near_one = false;
  return rep;
}

}  // namespace thoma
