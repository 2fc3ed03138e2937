#pragma once

#include <string>

#include "thoma/thoma_num/exp_poly.hpp"

namespace thoma {

/// Q^(N,M)[e^{Ct}] in log space (always positive).
inline SignedLog q_exp(const ThomaPoint& p, double C, double theta, ShiftLevel l = {}) {
  return eval_Q(p.shifted(l), ExpPoly{}.add(1.0, 0, C), theta);
}

/// chi_C = C^-1 log(1 + Q^(N,M)[e^{Ct}]).
inline double chi(const ThomaPoint& p, double C, double theta, ShiftLevel l = {}) {
  if (C == 0.0) throw Error(ErrorCode::invalid_argument, "chi needs C != 0");
  return log1p_exp(q_exp(p, C, theta, l).log_mag) / C;
}

/// Log of the denominator factor 1 + Q[e^{Ct}].
inline double log_one_plus_q_exp(const std::vector<Atom>& atoms, double C) {
  return log1p_exp(eval_Q(atoms, ExpPoly{}.add(1.0, 0, C)).log_mag);
}

/// Gamma of chi_C and chi_D evaluated on the shifted point.
inline double gamma_CD_num(const ThomaPoint& p, double C, double D, double theta, ShiftLevel l = {}) {
  if (C == 0.0 || D == 0.0) throw Error(ErrorCode::invalid_argument, "gamma_CD needs C, D != 0");
  const auto atoms = thoma_measure(p.shifted(l), theta);
  ExpPoly joint;
  joint.add(1.0, 0, C + D).add(C + D, 1, C + D).add(C * D, 2, C + D);
  const SignedLog a = eval_Q(atoms, joint);
  const SignedLog b = eval_Q(atoms, ExpPoly{}.add(1.0, 0, C).add(C, 1, C));
  const SignedLog c = eval_Q(atoms, ExpPoly{}.add(1.0, 0, D).add(D, 1, D));
  const SignedLog num = a - b * c;
  const SignedLog den{(C * D > 0) ? 1 : -1, std::log(std::fabs(C)) + std::log(std::fabs(D)) +
                                                log_one_plus_q_exp(atoms, C) +
                                                log_one_plus_q_exp(atoms, D)};
  return (num / den).to_double();
}

/// Target generator of Gamma_C: a coordinate x_i or a shifted moment q_k^(N,M).
struct GammaTarget {
  enum class Kind { coordinate, moment } kind = Kind::moment;
  int index = 1;

  static GammaTarget x(int i) { return {Kind::coordinate, i}; }
  static GammaTarget q(int k) { return {Kind::moment, k}; }
  std::string name() const {
    return kind == Kind::moment ? "q" + std::to_string(index) : coordinate_name(index);
  }
};

/// Gamma(chi_C, v) at level (N, M) for a generator v of that level.
inline double gamma_C_num(const ThomaPoint& p, GammaTarget v, double C, double theta, ShiftLevel l = {}) {
  if (C == 0.0) throw Error(ErrorCode::invalid_argument, "gamma_C needs C != 0");
  const ThomaPoint sp = p.shifted(l);
  const auto atoms = thoma_measure(sp, theta);
  const double log_den = std::log(std::fabs(C)) + log_one_plus_q_exp(atoms, C);
  const int den_sign = C > 0 ? 1 : -1;
  if (v.kind == GammaTarget::Kind::coordinate) {
    const int i = v.index;
    if (i == 0 || i > l.N || i < -l.M)
      throw Error(ErrorCode::invalid_argument, "coordinate " + v.name() + " outside level range");
    const SignedLog num =
        eval_Q(atoms, ExpPoly{}.add(1.0, 0, C).add(C, 1, C)) - SignedLog::from_double(1.0);
    return -p.coordinate(i) * (num / SignedLog{den_sign, log_den}).to_double();
  }
  const int k = v.index;
  if (k < 1) throw Error(ErrorCode::invalid_argument, "moment index must be >= 1");
  const SignedLog a = eval_Q(atoms, ExpPoly{}.add(1.0, k, C).add(C, k + 1, C));
  const SignedLog b = eval_Q(atoms, ExpPoly{}.add(1.0, 0, C).add(C, 1, C));
  const SignedLog num = a - b * SignedLog::from_double(eval_q(sp, k, theta));
  return (k + 1) * (num / SignedLog{den_sign, log_den}).to_double();
}

}  // namespace thoma
