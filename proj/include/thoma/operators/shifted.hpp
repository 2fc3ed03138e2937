#pragma once

#include <vector>

#include "thoma/poly_core/natural.hpp"
#include "thoma/poly_core/polynomial.hpp"

namespace thoma {

/// Polynomial in a single variable t with Coeff coefficients (dense).
class PhiPoly {
 public:
  PhiPoly() = default;
  explicit PhiPoly(std::vector<Coeff> c) : c_(std::move(c)) { trim(); }
  static PhiPoly monomial(int k, const Coeff& c = Coeff(1L)) {
    std::vector<Coeff> v(static_cast<std::size_t>(k) + 1);
    v[static_cast<std::size_t>(k)] = c;
    return PhiPoly(std::move(v));
  }

  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff at(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Coeff{};
  }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  friend PhiPoly operator+(const PhiPoly& x, const PhiPoly& y) {
    std::vector<Coeff> v(std::max(x.c_.size(), y.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.at(int(i)) + y.at(int(i));
    return PhiPoly(std::move(v));
  }
  friend PhiPoly operator-(const PhiPoly& x, const PhiPoly& y) {
    std::vector<Coeff> v(std::max(x.c_.size(), y.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.at(int(i)) - y.at(int(i));
    return PhiPoly(std::move(v));
  }
  friend PhiPoly operator*(const PhiPoly& x, const PhiPoly& y) {
    if (x.c_.empty() || y.c_.empty()) return {};
    std::vector<Coeff> v(x.c_.size() + y.c_.size() - 1);
    for (std::size_t i = 0; i < x.c_.size(); ++i)
      for (std::size_t j = 0; j < y.c_.size(); ++j) v[i + j] += x.c_[i] * y.c_[j];
    return PhiPoly(std::move(v));
  }

  /// (t * phi)'
  PhiPoly t_derivative() const {
    std::vector<Coeff> v(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k] * mpq_class(static_cast<long>(k + 1));
    return PhiPoly(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Coeff> c_;
};

/// Q^(N,M)[phi]: t^k -> q_k^(N,M), 1 -> 1.
inline ExtPoly q_nm_of_phi(const PhiPoly& phi, ShiftLevel l) {
  ExtPoly r({l});
  for (int k = 0; k <= phi.degree(); ++k) r += ext_qs(l, k) * phi.at(k);
  return r;
}

namespace detail {

inline std::vector<int> level_coordinates(ShiftLevel l) {
  std::vector<int> idx;
  for (int j = l.M; j >= 1; --j) idx.push_back(-j);
  for (int i = 1; i <= l.N; ++i) idx.push_back(i);
  return idx;
}

inline std::vector<int> qs_indices(const ExtPoly& u) {
  std::vector<int> ks;
  for (Gen g : u.variables())
    if (g.kind == GenKind::qs) ks.push_back(g.index);
  return ks;
}

inline std::vector<int> x_indices(const ExtPoly& u) {
  std::vector<int> is;
  for (Gen g : u.variables())
    if (g.kind == GenKind::x) is.push_back(g.index);
  return is;
}

}  // namespace detail

/// Gamma^(N,M)(u, v) on the extended algebra at the common level of u and v.
inline ExtPoly gamma_NM(const ExtPoly& u, const ExtPoly& v) {
  u.check_same(v);
  const ShiftLevel l = u.family().level;
  ExtPoly r({l});
  const auto ux = detail::x_indices(u), vx = detail::x_indices(v);
  const auto uq = detail::qs_indices(u), vq = detail::qs_indices(v);
  for (int i : ux) {
    const ExtPoly du = u.derivative(Gen::x(i));
    for (int j : vx) {
      ExtPoly w = -(ext_x(l, i) * ext_x(l, j));
      if (i == j) w += ext_x(l, i);
      r += w * du * v.derivative(Gen::x(j));
    }
    for (int k : vq)
      r += ext_x(l, i) * ext_qs(l, k) * du * v.derivative(Gen::qs(k)) *
           Coeff(static_cast<long>(-(k + 1)));
  }
  for (int i : vx) {
    const ExtPoly dv = v.derivative(Gen::x(i));
    for (int k : uq)
      r += ext_x(l, i) * ext_qs(l, k) * dv * u.derivative(Gen::qs(k)) *
           Coeff(static_cast<long>(-(k + 1)));
  }
  for (int k : uq) {
    const ExtPoly du = u.derivative(Gen::qs(k));
    for (int m : vq)
      r += (ext_qs(l, k + m) - ext_qs(l, k) * ext_qs(l, m)) * du * v.derivative(Gen::qs(m)) *
           Coeff(static_cast<long>((k + 1) * (m + 1)));
  }
  return r;
}

/// Gamma[phi; psi] = Q[(t phi)'(t psi)'] - Q[(t phi)'] Q[(t psi)'].
inline ExtPoly gamma_bracket_double(const PhiPoly& phi, const PhiPoly& psi, ShiftLevel l) {
  const PhiPoly dphi = phi.t_derivative(), dpsi = psi.t_derivative();
  return q_nm_of_phi(dphi * dpsi, l) - q_nm_of_phi(dphi, l) * q_nm_of_phi(dpsi, l);
}

/// Gamma[phi](u) for u in the extended algebra at level l.
inline ExtPoly gamma_bracket_single(const PhiPoly& phi, const ExtPoly& u) {
  const ShiftLevel l = u.family().level;
  const PhiPoly dphi = phi.t_derivative();
  const ExtPoly qd = q_nm_of_phi(dphi, l);
  const ExtPoly centred = q_nm_of_phi(dphi - PhiPoly::monomial(0, phi.at(0)), l);
  ExtPoly r({l});
  for (int i : detail::x_indices(u)) r -= ext_x(l, i) * centred * u.derivative(Gen::x(i));
  for (int k : detail::qs_indices(u))
    r += (q_nm_of_phi(dphi * PhiPoly::monomial(k), l) - qd * ext_qs(l, k)) *
         u.derivative(Gen::qs(k)) * Coeff(static_cast<long>(k + 1));
  return r;
}

/// Rewrite from level `from` to an adjacent level `to` = (N+1, M) or (N, M+1).
inline ExtPoly shift_rewrite(const ExtPoly& p, ShiftLevel to) {
  const ShiftLevel from = p.family().level;
  const bool up_n = to.N == from.N + 1 && to.M == from.M;
  const bool up_m = to.N == from.N && to.M == from.M + 1;
  if (!up_n && !up_m)
    throw Error(ErrorCode::non_adjacent_levels,
                "shift rewrite needs adjacent levels: " + level_string(from) + " -> " + level_string(to));
  const int fresh = up_n ? to.N : -to.M;
  return substitute(p, ExtFamily{to}, [&](Gen g) {
    if (g.kind == GenKind::x) return ext_x(to, g.index);
    const int k = g.index;
    ExtPoly img = ext_qs(to, k);
    const Coeff c = up_n ? Coeff(1L) : minus_theta_pow(k);
    img.add_term(Monomial::of(Gen::x(fresh), k + 1), c);
    return img;
  });
}

}  // namespace thoma
