#pragma once

#include <cmath>

#include "thoma/thoma_num/transforms.hpp"

namespace thoma {

namespace detail {

/// G(y) = sum_{n>=0} (n+3) y^{n+1} / (n+2)! = (e^y - 1) + (e^y - 1 - y)/y.
inline SignedLog series_G(double y) {
  if (std::fabs(y) < 0.5) {
    double term = 1.0, sum = 0.0;  // term = y^{n+1}/(n+2)!
    term = y / 2.0;
    for (int n = 0; n < 40; ++n) {
      sum += (n + 3) * term;
      term *= y / (n + 3);
    }
    return SignedLog::from_double(sum);
  }
  if (y > 30.0) {
    const double lead = 1.0 + 1.0 / y;
    return {1, y + std::log(lead) + std::log1p(-(2.0 + 1.0 / y) * std::exp(-y) / lead)};
  }
  const double em1 = std::expm1(y);
  return SignedLog::from_double(em1 + (em1 - y) / y);
}

/// K(y) = sum_{n>=0} (n+3)(n+1) y^n / (n+2)! = e^y (1 + 1/y - 1/y^2) + 1/y^2.
inline SignedLog series_K(double y) {
  if (std::fabs(y) < 0.5) {
    double term = 0.5, sum = 0.0;  // term = y^n/(n+2)!
    for (int n = 0; n < 40; ++n) {
      sum += (n + 3) * (n + 1) * term;
      term *= y / (n + 3);
    }
    return SignedLog::from_double(sum);
  }
  const double lead = 1.0 + 1.0 / y - 1.0 / (y * y);
  if (y > 30.0) return {1, y + std::log(lead) + std::log1p(std::exp(-y) / (y * y * lead))};
  return SignedLog::from_double(std::exp(y) * lead + 1.0 / (y * y));
}

/// (e^{C loc} - 1)/loc in log space, loc != 0.
inline SignedLog sl_expm1_ratio(double C, double loc) {
  return sl_expm1(C * loc) / SignedLog::from_double(loc);
}

inline void check_top_atoms(const ThomaPoint& p, double C, double theta) {
  auto atoms = thoma_measure(p, theta);
  if (atoms.size() < 2) return;
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.loc > y.loc; });
  const bool coincide = C > 0 ? atoms[0].loc - atoms[1].loc < 1e-9
                              : atoms[atoms.size() - 2].loc - atoms.back().loc < 1e-9;
  if (coincide) throw Error(ErrorCode::coinciding_atoms, "coinciding top atoms");
}

}  // namespace detail

/// Exact value of A(chi_C) split into its four closed-form contributions.
struct AChiTerms {
  double t1 = 0, t2 = 0, t3 = 0, p1 = 0, p2 = 0;
  double total() const { return t1 + t2 + t3 + p1 + p2; }
};

inline AChiTerms a_chi_terms(const ThomaPoint& p, double C, const NumParams& prm) {
  if (C == 0.0) throw Error(ErrorCode::invalid_argument, "A chi needs C != 0");
  const double th = prm.theta;
  detail::check_top_atoms(p, C, th);
  const auto atoms = thoma_measure(p, th);
  const double log_den = log_one_plus_q_exp(atoms, C);
  const SignedLog den{1, log_den};
  const SignedLog c_sl = SignedLog::from_double(C);
  AChiTerms out;

  // g(Ct) = (1+Ct)e^{Ct} - 1
  ExpPoly g2;
  g2.add(1.0, 0, 2 * C).add(2 * C, 1, 2 * C).add(C * C, 2, 2 * C);
  g2.add(-2.0, 0, C).add(-2.0 * C, 1, C).add(1.0, 0, 0.0);
  const SignedLog qg2 = eval_Q(atoms, g2);
  const SignedLog qg = eval_Q(atoms, ExpPoly{}.add(1.0, 0, C).add(C, 1, C)) - SignedLog::from_double(1.0);
  out.t1 = -(qg2 / (c_sl * den * den)).to_double();
  out.t2 = (qg * qg / (c_sl * den * den)).to_double();

  // Regular drift part.
  const double s2t = prm.s2 / th;
  ExpPoly f;
  f.add(2 * C * (1 - th) + C * prm.s1 - s2t, 0, C);
  f.add(C * C * (1 - th) - 2 * C - s2t * C, 1, C);
  f.add(-C * C, 2, C);
  f.add(s2t, 0, 0.0);
  LogSum t3;
  t3.add(eval_Q(atoms, f));
  for (const auto& a : atoms) {
    // s1 * w * (e^{C loc} - 1)/loc, with limit s1 * w * C at loc = 0
    if (a.loc == 0.0)
      t3.add(SignedLog::from_double(prm.s1 * a.weight * C));
    else
      t3.add(SignedLog::from_double(prm.s1 * a.weight) * detail::sl_expm1_ratio(C, a.loc));
  }
  out.t3 = (t3.result() / (c_sl * den)).to_double();

  // Interaction part over merged atoms.
  const auto m = merged_measure(p, th);
  LogSum p1, p2;
  for (std::size_t a = 0; a < m.size(); ++a) {
    const SignedLog wa = SignedLog::from_double(m[a].weight);
    p1.add(wa * wa * c_sl * detail::series_K(C * m[a].loc));
    const SignedLog ga = detail::series_G(C * m[a].loc);
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      const SignedLog wb = SignedLog::from_double(m[b].weight);
      const SignedLog diff = ga - detail::series_G(C * m[b].loc);
      p2.add(SignedLog::from_double(2.0) * wa * wb * diff / SignedLog::from_double(m[a].loc - m[b].loc));
    }
  }
  const SignedLog th_sl = SignedLog::from_double(th);
  out.p1 = (th_sl * p1.result() / den).to_double();
  out.p2 = (th_sl * p2.result() / den).to_double();
  return out;
}

inline double a_chi_num(const ThomaPoint& p, double C, const NumParams& prm) {
  return a_chi_terms(p, C, prm).total();
}

/// Limit of A(chi_C) as C -> +infinity on the simplex with alpha_1 the distinct top atom.
inline double nat_limit_alpha1(const ThomaPoint& p, const NumParams& prm) {
  const double th = prm.theta;
  const double a1 = p.alpha_at(1);
  if (!(a1 > 0)) throw Error(ErrorCode::invalid_argument, "limit needs alpha_1 > 0");
  detail::check_top_atoms(p, 1.0, th);
  double sum = 0.0;
  for (std::size_t i = 1; i < p.alpha().size(); ++i) sum += p.alpha()[i] / (a1 - p.alpha()[i]);
  for (double b : p.beta()) sum += b / (a1 + th * b);
  return -th + prm.s1 - prm.s2 / th * a1 + 2 * th * sum;
}

}  // namespace thoma
