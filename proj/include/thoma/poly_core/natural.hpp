#pragma once

#include <vector>

#include "thoma/poly_core/polynomial.hpp"

namespace thoma {

/// (-theta)^k as a coefficient.
inline Coeff minus_theta_pow(int k) {
  Coeff c = Coeff::param(Param::theta, k);
  return (k % 2 == 0) ? c : -c;
}

/// sgn_theta(i): 1 for i > 0, -theta for i < 0.
inline Coeff sgn_theta(int i) { return i > 0 ? Coeff(1L) : -Coeff::param(Param::theta); }
/// sgn_theta(i)^-1: 1 for i > 0, -theta^-1 for i < 0.
inline Coeff sgn_theta_inv(int i) { return i > 0 ? Coeff(1L) : -Coeff::param(Param::theta, -1); }

/// Image of q_k under the moment map: sum_i x_i^{k+1} + (-theta)^k sum_j x_{-j}^{k+1}.
inline NatPoly moment_image(Truncation t, int k) {
  NatPoly r({t});
  if (k == 0) {
    r.add_term(Monomial{}, Coeff(1L));
    return r;
  }
  for (int i = 1; i <= t.n; ++i) r.add_term(Monomial::of(Gen::x(i), k + 1), Coeff(1L));
  const Coeff c = minus_theta_pow(k);
  for (int j = 1; j <= t.m; ++j) r.add_term(Monomial::of(Gen::x(-j), k + 1), c);
  return r;
}

/// Substitute the moment map into a polynomial in the q_k.
inline NatPoly substitute_moments(const MomentPoly& p, Truncation t) {
  return substitute(p, NatFamily{t}, [&](Gen g) { return moment_image(t, g.index); });
}

/// Sum of all coordinates of the truncation.
inline NatPoly coordinate_sum(Truncation t) {
  NatPoly r({t});
  for (int i : t.indices()) r.add_term(Monomial::of(Gen::x(i)), Coeff(1L));
  return r;
}

/// Normal form modulo (sum_i x_i - 1): eliminates x_n (or x_-m when n = 0).
inline NatPoly reduce_mod_simplex(const NatPoly& p) {
  const Truncation t = p.family().trunc;
  if (t.n <= 0 && t.m <= 0)
    throw Error(ErrorCode::empty_truncation, "simplex reduction needs a nonempty truncation");
  const Gen pivot = t.n > 0 ? Gen::x(t.n) : Gen::x(-t.m);
  NatPoly image = NatPoly::constant({t}, Coeff(1L));
  for (int i : t.indices())
    if (Gen::x(i) != pivot) image.add_term(Monomial::of(Gen::x(i)), Coeff(-1L));
  std::vector<NatPoly> powers{NatPoly::constant({t}, Coeff(1L))};
  NatPoly r({t});
  for (const auto& [m, c] : p.terms()) {
    auto [e, rest] = m.without(pivot);
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * image);
    if (e == 0) {
      r.add_term(rest, c);
      continue;
    }
    for (const auto& [pm, pc] : powers[e].terms()) r.add_term(rest * pm, pc * c);
  }
  return r;
}

}  // namespace thoma
