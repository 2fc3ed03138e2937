#pragma once

#include <string>

#include "thoma/poly_core/polynomial.hpp"

namespace thoma {

namespace detail {

inline mpz_class gcd_z(mpz_class a, mpz_class b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline mpz_class lcm_z(mpz_class a, mpz_class b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Rational content of a coefficient, signed like its first term.
inline mpq_class content(const Coeff& c) {
  mpz_class g = 0, l = 1;
  for (const auto& [m, r] : c.terms()) {
    g = gcd_z(g, r.get_num());
    l = lcm_z(l, r.get_den());
  }
  mpq_class q(g, l);
  q.canonicalize();
  if (!c.is_zero() && sgn(c.terms().begin()->second) < 0) q = -q;
  return q;
}

}  // namespace detail

/// Parseable canonical text; terms are grouped by generator monomial, constants last.
template <PolyFamily F>
std::string to_string(const Polynomial<F>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  auto emit = [&](const Monomial& m, const Coeff& c) {
    std::string mono;
    for (const auto& [g, e] : m.factors()) {
      if (!mono.empty()) mono += "*";
      mono += p.family().gen_name(g);
      if (e != 1) mono += "^" + std::to_string(e);
    }
    bool negative;
    std::string body;
    if (c.size() == 1) {
      const auto& [pm, r] = *c.terms().begin();
      negative = sgn(r) < 0;
      const mpq_class mag = abs(r);
      std::string pstr = Coeff::monomial_string(pm);
      std::vector<std::string> parts;
      if (mag != 1 || (pstr.empty() && mono.empty())) parts.push_back(rational_string(mag));
      if (!pstr.empty()) parts.push_back(pstr);
      if (!mono.empty()) parts.push_back(mono);
      for (std::size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
    } else {
      const mpq_class g = detail::content(c);
      negative = sgn(g) < 0;
      const mpq_class mag = abs(g);
      Coeff rest = c * (1 / g);
      if (mag != 1) body += rational_string(mag) + "*";
      body += "(" + rest.str() + ")";
      if (!mono.empty()) body += "*" + mono;
    }
    if (first)
      out += negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  };
  for (const auto& [m, c] : p.terms())
    if (!m.is_unit()) emit(m, c);
  auto it = p.terms().find(Monomial{});
  if (it != p.terms().end()) emit(it->first, it->second);
  return out;
}

}  // namespace thoma
