#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "thoma/thoma_num/point.hpp"

namespace thoma {

/// Random truncated point: up to `max_atoms` alphas and betas, total mass in (0, 1].
template <class Rng>
ThomaPoint random_truncated_point(Rng& rng, int max_atoms = 5) {
  std::uniform_int_distribution<int> count(0, max_atoms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const int na = count(rng), nb = count(rng);
  const double mass = unit(rng) < 0.3 ? 1.0 : unit(rng);
  std::vector<double> w(static_cast<std::size_t>(na + nb));
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  std::vector<double> alpha, beta;
  for (int i = 0; i < na + nb; ++i) (i < na ? alpha : beta).push_back(w[i] / total * mass * (1 - 1e-15));
  std::sort(alpha.rbegin(), alpha.rend());
  std::sort(beta.rbegin(), beta.rend());
  return ThomaPoint(alpha, beta);
}

/// Point with gapped, non-negligible leading atoms on both sides.
///
/// alpha_1 - alpha_2 and beta_1 - beta_2 are at least `gap`; alpha_1, alpha_2, beta_1,
/// beta_2 are at least `floor`; every further atom sits `gap` below its predecessor.
template <class Rng>
ThomaPoint random_gapped_point(Rng& rng, double gap = 0.05, double floor = 0.1) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    auto side = [&](int n) {
      std::vector<double> v;
      double cur = floor + 2 * gap + unit(rng) * 0.25;
      for (int i = 0; i < n; ++i) {
        v.push_back(cur);
        cur -= gap + unit(rng) * 0.05;
        if (i == 0) cur = std::max(cur, floor);
        if (cur <= 0) break;
      }
      return v;
    };
    std::uniform_int_distribution<int> count(2, 4);
    auto a = side(count(rng)), b = side(count(rng));
    double mass = 0;
    for (double x : a) mass += x;
    for (double x : b) mass += x;
    if (mass > 1.0) continue;
    if (a.size() < 2 || b.size() < 2 || a[1] < floor || b[1] < floor) continue;
    if (a[0] - a[1] < gap || b[0] - b[1] < gap) continue;
    return ThomaPoint(a, b);
  }
}

/// Point on the simplex (gamma = 0) with alpha_1 the clearly isolated top coordinate.
template <class Rng>
ThomaPoint random_simplex_point(Rng& rng, double min_top = 0.4, double gap = 0.1) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 4);
  std::exponential_distribution<double> expo(1.0);
  for (;;) {
    const double a1 = min_top + unit(rng) * (0.75 - min_top);
    const int na = count(rng) - 1, nb = count(rng);
    std::vector<double> w(static_cast<std::size_t>(na + nb));
    double total = 0.0;
    for (auto& x : w) total += (x = expo(rng));
    std::vector<double> alpha{a1}, beta;
    for (int i = 0; i < na + nb; ++i) {
      const double x = w[i] / total * (1.0 - a1);
      (i < na ? alpha : beta).push_back(x);
    }
    std::sort(alpha.rbegin(), alpha.rend());
    std::sort(beta.rbegin(), beta.rend());
    if (alpha.size() > 1 && alpha[0] - alpha[1] < gap) continue;
    // keep coordinates on each side distinct
    bool distinct = true;
    for (std::size_t i = 1; i < alpha.size(); ++i) distinct &= alpha[i - 1] - alpha[i] > 1e-3;
    for (std::size_t i = 1; i < beta.size(); ++i) distinct &= beta[i - 1] - beta[i] > 1e-3;
    if (!distinct) continue;
    return ThomaPoint(alpha, beta);
  }
}

}  // namespace thoma
