#pragma once

#include "thoma/poly_core/natural.hpp"
#include "thoma/poly_core/polynomial.hpp"

namespace thoma {

namespace detail {

inline Coeff qq_weight(int k, int l) { return Coeff(static_cast<long>((k + 1) * (l + 1))); }

/// q_{k+l} - q_k q_l with q_0 = 1.
inline MomentPoly moment_cross(int k, int l) { return moment_q(k + l) - moment_q(k) * moment_q(l); }

/// Second-order part sum_{k,l} (k+1)(l+1)(q_{k+l} - q_k q_l) d2u/dq_k dq_l.
inline MomentPoly second_order(const MomentPoly& u) {
  MomentPoly r(u.family());
  const auto vars = u.variables();
  for (Gen gk : vars) {
    const MomentPoly dk = u.derivative(gk);
    for (Gen gl : vars) {
      const MomentPoly dkl = dk.derivative(gl);
      if (dkl.is_zero()) continue;
      r += dkl * moment_cross(gk.index, gl.index) * qq_weight(gk.index, gl.index);
    }
  }
  return r;
}

}  // namespace detail

/// Carré du champ Gamma(u, v) on moment polynomials.
inline MomentPoly gamma(const MomentPoly& u, const MomentPoly& v) {
  MomentPoly r;
  const auto vu = u.variables(), vv = v.variables();
  for (Gen gk : vu) {
    const MomentPoly du = u.derivative(gk);
    for (Gen gl : vv) {
      r += du * v.derivative(gl) * detail::moment_cross(gk.index, gl.index) *
           detail::qq_weight(gk.index, gl.index);
    }
  }
  return r;
}

/// The two-parameter generator A acting on moment polynomials.
inline MomentPoly apply_A(const MomentPoly& u) {
  MomentPoly r = detail::second_order(u);
  const Coeff theta = Coeff::param(Param::theta);
  const Coeff s1 = Coeff::param(Param::s1);
  const Coeff s2_over_theta = Coeff(1L, ParamMonomial::of(Param::s2)) * Coeff::param(Param::theta, -1);
  for (Gen g : u.variables()) {
    const int k = g.index;
    const MomentPoly du = u.derivative(g);
    MomentPoly b = moment_q(k - 1) * ((Coeff(1L) - theta) * Coeff(static_cast<long>(k)) + s1) -
                   moment_q(k) * (Coeff(static_cast<long>(k)) + s2_over_theta);
    if (k >= 2) {
      MomentPoly conv;
      for (int i = 0; i <= k - 2; ++i) conv += moment_q(i) * moment_q(k - 2 - i);
      b += conv * theta;
    }
    r += du * b * Coeff(static_cast<long>(k + 1));
  }
  return r;
}

/// Two-parameter Petrov generator (parameters pa, ptau).
inline MomentPoly apply_A_petrov(const MomentPoly& u) {
  MomentPoly r = detail::second_order(u);
  const Coeff a = Coeff::param(Param::a);
  const Coeff tau = Coeff::param(Param::tau);
  for (Gen g : u.variables()) {
    const int k = g.index;
    const Coeff kk(static_cast<long>(k));
    MomentPoly b = moment_q(k) * (-(kk + tau)) + moment_q(k - 1) * (kk - a);
    r += u.derivative(g) * b * Coeff(static_cast<long>(k + 1));
  }
  return r;
}

/// Substitute s2 -> ptau*theta and s1 -> -pa, then set theta to 0.
inline MomentPoly degenerate_to_petrov(const MomentPoly& p) {
  const Coeff tau_theta = Coeff::param(Param::tau) * Coeff::param(Param::theta);
  const Coeff minus_a = -Coeff::param(Param::a);
  return p.map_coeffs([&](const Coeff& c) {
    return c.substitute(Param::s2, tau_theta).substitute(Param::s1, minus_a).theta_to_zero();
  });
}

}  // namespace thoma
