#pragma once

#include <vector>

#include "thoma/thoma_num/point.hpp"
#include "thoma/thoma_num/signed_log.hpp"

namespace thoma {

/// Finite sum of c * t^k * e^{rate t}.
struct ExpPoly {
  struct Term {
    double c;
    int k;
    double rate;
  };
  std::vector<Term> terms;

  ExpPoly& add(double c, int k, double rate) {
    if (c != 0.0) terms.push_back({c, k, rate});
    return *this;
  }
};

/// Q[phi] = sum over atoms of weight * phi(location), in log space.
inline SignedLog eval_Q(const std::vector<Atom>& atoms, const ExpPoly& phi) {
  LogSum s;
  for (const auto& a : atoms) {
    const double lw = std::log(a.weight);
    for (const auto& t : phi.terms) {
      if (a.loc == 0.0) {
        if (t.k == 0) s.add(SignedLog::from_double(t.c * a.weight));
        continue;
      }
      const int sgn = (t.c > 0 ? 1 : -1) * ((a.loc < 0 && t.k % 2 == 1) ? -1 : 1);
      s.add({sgn, std::log(std::fabs(t.c)) + lw + t.k * std::log(std::fabs(a.loc)) + t.rate * a.loc});
    }
  }
  return s.result();
}

inline SignedLog eval_Q(const ThomaPoint& p, const ExpPoly& phi, double theta) {
  return eval_Q(thoma_measure(p, theta), phi);
}

}  // namespace thoma
