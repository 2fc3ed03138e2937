#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "thoma/thoma_num/transforms.hpp"

namespace thoma {

/// Default C grid: +-{1, 10, ..., 1e5}.
inline std::vector<double> default_c_grid() {
  std::vector<double> g;
  for (int e = 0; e <= 5; ++e) {
    g.push_back(std::pow(10.0, e));
    g.push_back(-std::pow(10.0, e));
  }
  return g;
}

struct BoundViolation {
  std::string inequality;
  std::size_t point_index = 0;
  double C = 0;
  int k = 0;
  double lhs_log = 0;  // log of the side that should be smaller
  double rhs_log = 0;
};

struct BoundsReport {
  std::size_t checks = 0;
  std::vector<BoundViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Relative slack used when comparing logs of equal quantities computed differently.
inline constexpr double kLogSlack = 1e-12;

/// Envelope (lambda x C + 1) e^{lambda x C} / (C (1 + x e^{lambda x C})) in log space.
inline double log_envelope(double x, double lambda, double C) {
  const double y = lambda * x * C;
  if (x <= 0.0) return -std::log(C);
  return std::log1p(y) + y - std::log(C) - log1p_exp(std::log(x) + y);
}

namespace detail {

inline double log_max(double a, double b) { return std::max(a, b); }

}  // namespace detail

/// Check the exponential-moment bounds, chi bound and envelope on every point and grid value.
inline BoundsReport check_bounds(const std::vector<ThomaPoint>& points, const std::vector<double>& grid,
                                 double theta, int max_k = 4) {
  BoundsReport rep;
  auto check = [&](const char* name, std::size_t pi, double C, int k, double lhs, double rhs) {
    ++rep.checks;
    if (lhs > rhs + kLogSlack * std::max(1.0, std::fabs(rhs)))
      rep.violations.push_back({name, pi, C, k, lhs, rhs});
  };
  const double ln_inf = -std::numeric_limits<double>::infinity();
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const ThomaPoint& p = points[pi];
    const auto atoms = thoma_measure(p, theta);
    const double a1 = p.alpha_at(1), b1 = p.beta_at(1);
    const double la1 = a1 > 0 ? std::log(a1) : ln_inf;
    const double lb1 = b1 > 0 ? std::log(b1) : ln_inf;
    for (double C : grid) {
      if (C == 0.0) continue;
      const double c = std::fabs(C);
      for (int k = 0; k <= max_k; ++k) {
        const SignedLog q = eval_Q(atoms, ExpPoly{}.add(1.0, k, C));
        const double lhs = q.is_zero() ? ln_inf : q.log_mag;
        if (C > 0) {
          const double term = k == 0 ? a1 * c : (a1 > 0 ? k * la1 + a1 * c : ln_inf);
          check("upper-pos", pi, C, k, lhs, detail::log_max(term, k * std::log(theta)));
        } else {
          const double term = k == 0 ? theta * b1 * c
                                     : (b1 > 0 ? k * (std::log(theta) + lb1) + theta * b1 * c : ln_inf);
          check("upper-neg", pi, C, k, lhs, detail::log_max(term, 0.0));
        }
      }
      const double lq = eval_Q(atoms, ExpPoly{}.add(1.0, 0, C)).log_mag;
      if (C > 0 && a1 > 0) check("lower-pos", pi, C, 0, la1 + a1 * c, lq);
      if (C < 0 && b1 > 0) check("lower-neg", pi, C, 0, lb1 + theta * b1 * c, lq);
      if (c >= 1.0)
        check("chi-bound", pi, C, 0, std::log(std::fabs(chi(p, C, theta))),
              std::log(1.0 + theta + std::log(2.0)));
      for (const auto& [x, lambda] : {std::pair{a1, 1.0}, std::pair{b1, theta}}) {
        if (c > 2.0 / lambda) {
          check("envelope", pi, C, 0, log_envelope(x, lambda, c), std::log(lambda + lambda / std::log(2.0)));
          const double xs = std::log(c * lambda) / (c * lambda);
          if (xs <= 1.0) check("envelope-split", pi, C, 0, log_envelope(xs, lambda, c), std::log(lambda));
        }
      }
    }
  }
  return rep;
}

}  // namespace thoma
