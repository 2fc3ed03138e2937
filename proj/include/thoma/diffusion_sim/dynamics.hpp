#pragma once

#include <cmath>
#include <vector>

#include "thoma/poly_core/polynomial.hpp"
#include "thoma/thoma_num/point.hpp"

namespace thoma {

/// State of the truncated diffusion: natural coordinates ordered x_-m..x_-1, x_1..x_n.
struct SimState {
  Truncation trunc;
  std::vector<double> x;

  static SimState from_point(const ThomaPoint& p, Truncation t) {
    SimState s{t, {}};
    for (int i : t.indices()) s.x.push_back(p.coordinate(i));
    return s;
  }
  double sum() const {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
};

/// sgn_theta per coordinate slot.
inline std::vector<double> slot_signs(Truncation t, double theta) {
  std::vector<double> s;
  for (int i : t.indices()) s.push_back(i > 0 ? 1.0 : -theta);
  return s;
}

/// Drift of the modified coordinates xt_i = sgn_theta(i) x_i.
inline std::vector<double> drift_nat(const SimState& st, const NumParams& prm) {
  const double th = prm.theta;
  const auto s = slot_signs(st.trunc, th);
  const std::size_t d = st.x.size();
  std::vector<double> b(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double xi_t = s[i] * st.x[i];
    double inter = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i || st.x[j] == 0.0) continue;
      inter += st.x[j] / (xi_t - s[j] * st.x[j]);
    }
    b[i] = prm.s1 - th / s[i] - prm.s2 / th * xi_t + 2 * th * inter;
  }
  return b;
}

/// diag(sgn * xt) - xt xt^T in modified coordinates, row-major.
inline std::vector<double> diffusion_matrix(const SimState& st, double theta) {
  const auto s = slot_signs(st.trunc, theta);
  const std::size_t d = st.x.size();
  std::vector<double> a(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double xi = s[i] * st.x[i], xj = s[j] * st.x[j];
      a[i * d + j] = (i == j ? s[i] * xi : 0.0) - xi * xj;
    }
  return a;
}

/// Apply a square root of diffusion_matrix to xi: D^{1/2} (I - c w w^T) xi.
///
/// With D = diag(s_i^2 x_i) and w_i = sign(s_i) sqrt(x_i), |w|^2 = sum x <= 1 and
/// c = (1 - sqrt(1 - |w|^2)) / |w|^2.
inline void apply_noise_factor(const SimState& st, const std::vector<double>& s, const double* xi,
                               double* out) {
  const std::size_t d = st.x.size();
  double w2 = 0.0, wx = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double w = (s[i] > 0 ? 1.0 : -1.0) * std::sqrt(st.x[i]);
    w2 += st.x[i];
    wx += w * xi[i];
  }
  w2 = std::min(w2, 1.0);
  const double c = w2 > 1e-300 ? (1.0 - std::sqrt(1.0 - w2)) / w2 : 0.5;
  for (std::size_t i = 0; i < d; ++i) {
    const double r = std::sqrt(st.x[i]);
    const double w = (s[i] > 0 ? 1.0 : -1.0) * r;
    out[i] = std::fabs(s[i]) * r * (xi[i] - c * w * wx);
  }
}

/// Smallest |xt_i - xt_j| over pairs of nonzero coordinates (infinity if none).
inline double min_pair_gap(const SimState& st, const std::vector<double>& s) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < st.x.size(); ++i) {
    if (st.x[i] == 0.0) continue;
    for (std::size_t j = i + 1; j < st.x.size(); ++j)
      if (st.x[j] != 0.0) g = std::min(g, std::fabs(s[i] * st.x[i] - s[j] * st.x[j]));
  }
  return g;
}

}  // namespace thoma
