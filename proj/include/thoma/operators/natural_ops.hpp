#pragma once

#include "thoma/poly_core/natural.hpp"
#include "thoma/poly_core/polynomial.hpp"

namespace thoma {

/// Gamma_ab(u, v) = sum_i x_i u_i v_i - (sum_i x_i u_i)(sum_j x_j v_j).
inline NatPoly gamma_alpha_beta(const NatPoly& u, const NatPoly& v) {
  u.check_same(v);
  const Truncation t = u.family().trunc;
  NatPoly diag({t}), eu({t}), ev({t});
  for (int i : t.indices()) {
    const NatPoly xi = nat_x(t, i);
    const NatPoly du = u.derivative(Gen::x(i)), dv = v.derivative(Gen::x(i));
    if (du.is_zero() && dv.is_zero()) continue;
    diag += xi * du * dv;
    eu += xi * du;
    ev += xi * dv;
  }
  return diag - eu * ev;
}

namespace detail {

/// sum_{i<j} x_i x_j h_{k-2}(xt_i, xt_j) with xt_i = sgn_theta(i) x_i.
inline NatPoly pair_kernel(Truncation t, int k) {
  NatPoly r({t});
  if (k < 2) return r;
  const auto idx = t.indices();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const int i = idx[a], j = idx[b];
      const Coeff si = sgn_theta(i), sj = sgn_theta(j);
      for (int l = 0; l <= k - 2; ++l) {
        const Coeff c = si.pow(static_cast<unsigned>(l)) * sj.pow(static_cast<unsigned>(k - 2 - l));
        r.add_term(Monomial::of(Gen::x(i), l + 1) * Monomial::of(Gen::x(j), k - 1 - l), c);
      }
    }
  }
  return r;
}

}  // namespace detail

/// Generator in modified coordinates applied to the moment image of u.
///
/// Diffusion and regular drift act on subst(u) directly; the singular interaction
/// term is evaluated in its pair-symmetrised polynomial form.
inline NatPoly apply_A_nat(const MomentPoly& u, Truncation t) {
  const NatPoly f = substitute_moments(u, t);
  const auto idx = t.indices();
  const Coeff theta = Coeff::param(Param::theta);
  const Coeff s1 = Coeff::param(Param::s1);
  const Coeff s2_over_theta = Coeff::param(Param::s2) * Coeff::param(Param::theta, -1);
  NatPoly r({t});
  std::vector<NatPoly> grad;
  grad.reserve(idx.size());
  for (int i : idx) grad.push_back(f.derivative(Gen::x(i)));
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const int i = idx[a];
    const NatPoly xi = nat_x(t, i);
    if (grad[a].is_zero()) continue;
    r += xi * grad[a].derivative(Gen::x(i));
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const NatPoly dij = grad[a].derivative(Gen::x(idx[b]));
      if (!dij.is_zero()) r -= xi * nat_x(t, idx[b]) * dij;
    }
    const Coeff sinv = sgn_theta_inv(i);
    NatPoly drift = NatPoly::constant({t}, s1 * sinv - theta * sinv * sinv);
    drift -= xi * s2_over_theta;
    r += drift * grad[a];
  }
  for (Gen g : u.variables()) {
    const int k = g.index;
    if (k < 2) continue;
    r += detail::pair_kernel(t, k) * substitute_moments(u.derivative(g), t) *
         (theta * Coeff(static_cast<long>(2 * (k + 1))));
  }
  return r;
}

}  // namespace thoma
