#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "thoma/thoma_num/bounds.hpp"
#include "thoma/thoma_num/generator_chi.hpp"

namespace thoma {

inline const std::vector<std::string>& limit_names() {
  static const std::vector<std::string> names = {"exasympt-pos", "exasympt-neg", "chi-pos",   "chi-neg",
                                                 "gammaCD-pos",  "gammaCD-neg",  "gammaC-v", "a-chi"};
  return names;
}

/// Options of a limit sweep beyond the point and parameters.
struct LimitOptions {
  std::vector<double> phi{1.0};  // polynomial p(t) for exasympt, lowest degree first
  GammaTarget target = GammaTarget::q(1);
  ShiftLevel level{};
  double multiplicity_tol = 1e-9;
  double tol_constant = 20.0;  // tolerance tol_constant / |C|
  int tail = 3;                // grid points used for the monotone-tail verdict
};

inline double eval_poly(const std::vector<double>& c, double t) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
  return r;
}

/// Mass of the measure at `loc` within `tol`.
inline double atom_mass(const ThomaPoint& p, double theta, double loc, double tol) {
  double m = 0.0;
  for (const auto& a : thoma_measure(p, theta))
    if (std::fabs(a.loc - loc) <= tol) m += a.weight;
  return m;
}

/// Direction of a limit: +1 for C -> +inf, -1 for C -> -inf, 0 for either (per grid sign).
inline int limit_direction(const std::string& name) {
  if (name == "gammaC-v") return 0;
  if (name == "a-chi") return 1;
  if (name.size() > 4 && name.compare(name.size() - 4, 4, "-pos") == 0) return 1;
  if (name.size() > 4 && name.compare(name.size() - 4, 4, "-neg") == 0) return -1;
  throw Error(ErrorCode::unknown_name, "unknown limit: " + name);
}

inline void check_limit_name(const std::string& name) {
  for (const auto& n : limit_names())
    if (n == name) return;
  throw Error(ErrorCode::unknown_name, "unknown limit: " + name);
}

/// Value of the quantity whose limit is named, at a single C.
inline double limit_value(const std::string& name, const ThomaPoint& p, double C, const NumParams& prm,
                          const LimitOptions& o = {}) {
  check_limit_name(name);
  const double th = prm.theta;
  if (name == "exasympt-pos" || name == "exasympt-neg") {
    ExpPoly f;
    for (std::size_t k = 0; k < o.phi.size(); ++k) f.add(o.phi[k], int(k), C);
    const double shift = name == "exasympt-pos" ? -C * p.alpha_at(1) : C * th * p.beta_at(1);
    SignedLog v = eval_Q(p, f, th);
    if (v.is_zero()) return 0.0;
    v.log_mag += shift;
    return v.to_double();
  }
  if (name == "chi-pos" || name == "chi-neg") return chi(p, C, th, o.level);
  if (name == "gammaCD-pos" || name == "gammaCD-neg") return gamma_CD_num(p, C, C, th, o.level);
  if (name == "gammaC-v") return gamma_C_num(p, o.target, C, th, o.level);
  return a_chi_num(p, C, prm);
}

/// Claimed limit in direction `dir` (+1 or -1).
inline double claimed_limit(const std::string& name, const ThomaPoint& p, int dir, const NumParams& prm,
                            const LimitOptions& o = {}) {
  check_limit_name(name);
  const double th = prm.theta;
  const ThomaPoint sp = p.shifted(o.level);
  const double a = sp.alpha_at(1), b = sp.beta_at(1);
  if (name == "exasympt-pos") {
    const double a1 = p.alpha_at(1);
    return eval_poly(o.phi, a1) * atom_mass(p, th, a1, o.multiplicity_tol);
  }
  if (name == "exasympt-neg") {
    const double loc = -th * p.beta_at(1);
    return eval_poly(o.phi, loc) * atom_mass(p, th, loc, o.multiplicity_tol);
  }
  if (name == "chi-pos") return a;
  if (name == "chi-neg") return -th * b;
  if (name == "gammaCD-pos") return a - a * a;
  if (name == "gammaCD-neg") return th * th * (b - b * b);
  if (name == "gammaC-v") {
    const GammaTarget v = o.target;
    if (v.kind == GammaTarget::Kind::coordinate) {
      const double x = p.coordinate(v.index);
      return dir > 0 ? -a * x : th * b * x;
    }
    const int k = v.index;
    const double qk = eval_q(sp, k, th);
    if (dir > 0) return (k + 1) * (std::pow(a, k + 1) - a * qk);
    return -th * (k + 1) * (std::pow(-th, k) * std::pow(b, k + 1) - b * qk);
  }
  return nat_limit_alpha1(p, prm);
}

/// Error changes below this are treated as rounding noise in the tail verdict.
inline constexpr double kRoundoffFloor = 1e-9;

struct SweepRow {
  double C;
  double value;
  double claimed;
  double abs_err;
};

struct SweepReport {
  std::string limit;
  std::vector<SweepRow> rows;
  bool tail_monotone = true;
  bool within_tolerance = true;
  bool converged() const { return tail_monotone && within_tolerance; }
};

/// Tabulate the named quantity along the grid and judge monotone-tail convergence.
inline SweepReport limit_sweep(const ThomaPoint& p, const std::string& name, const std::vector<double>& grid,
                               const NumParams& prm, const LimitOptions& o = {}) {
  const int dir = limit_direction(name);
  SweepReport rep{name, {}, true, true};
  std::vector<double> cs;
  for (double C : grid)
    if (C != 0.0 && (dir == 0 || (dir > 0) == (C > 0))) cs.push_back(C);
  std::sort(cs.begin(), cs.end(), [](double x, double y) { return std::fabs(x) < std::fabs(y); });
  for (double C : cs) {
    const double v = limit_value(name, p, C, prm, o);
    const double lim = claimed_limit(name, p, C > 0 ? 1 : -1, prm, o);
    rep.rows.push_back({C, v, lim, std::fabs(v - lim)});
  }
  // Tail and tolerance are judged separately per direction.
  for (int s : {1, -1}) {
    std::vector<SweepRow> side;
    for (const auto& r : rep.rows)
      if ((r.C > 0) == (s > 0)) side.push_back(r);
    if (side.empty()) continue;
    const std::size_t from = side.size() > std::size_t(o.tail) ? side.size() - o.tail : 0;
    for (std::size_t i = from + 1; i < side.size(); ++i)
      if (side[i].abs_err > side[i - 1].abs_err + kRoundoffFloor) rep.tail_monotone = false;
    const auto& last = side.back();
    if (last.abs_err > o.tol_constant / std::fabs(last.C)) rep.within_tolerance = false;
  }
  return rep;
}

}  // namespace thoma
