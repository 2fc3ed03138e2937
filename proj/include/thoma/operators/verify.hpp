#pragma once

#include <functional>
#include <string>
#include <vector>

#include "thoma/operators/generator.hpp"
#include "thoma/operators/natural_ops.hpp"
#include "thoma/operators/shifted.hpp"
#include "thoma/poly_core/format.hpp"

namespace thoma {

/// Ranges explored by the identity checkers.
struct VerifyRanges {
  int max_k = 6;         // moment index bound
  int max_grading = 10;  // product-rule monomial grading bound
  int max_level = 3;     // N, M bound for shifted identities
  int max_trunc = 5;     // n, m bound for natural-coordinate identities
  int max_petrov_k = 8;
  std::vector<MomentPoly> nat_inputs;  // empty: q1..q5, q1*q2, q1^2, q1*q3
};

struct IdentityCase {
  std::string identity;
  std::string label;
  bool pass = true;
  std::string witness;  // nonzero residual when the case fails
};

struct IdentityReport {
  std::string identity;
  std::vector<IdentityCase> cases;
  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& c : cases) f += c.pass ? 0 : 1;
    return f;
  }
  bool pass() const { return failures() == 0; }
};

inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {
      "product-rule", "lem111", "lem222", "consistent-shift",
      "gamma-nat-vs-moment", "a-nat-vs-a", "petrov-degeneration"};
  return names;
}

/// All monomials in q_1..q_maxk with grading between 1 and max_grading.
inline std::vector<MomentPoly> moment_monomials(int max_k, int max_grading) {
  std::vector<MomentPoly> out;
  std::function<void(int, int, Monomial)> rec = [&](int k, int budget, Monomial m) {
    if (k > max_k) {
      if (!m.is_unit()) out.push_back(MomentPoly::term({}, m, Coeff(1L)));
      return;
    }
    for (int e = 0; e * (k + 1) <= budget; ++e)
      rec(k + 1, budget - e * (k + 1), m * Monomial::of(Gen::q(k), e));
  };
  rec(1, max_grading, Monomial{});
  return out;
}

namespace detail {

template <class P>
void record(IdentityReport& rep, std::string label, const P& residual) {
  IdentityCase c{rep.identity, std::move(label), residual.is_zero(), {}};
  if (!c.pass) c.witness = to_string(residual);
  rep.cases.push_back(std::move(c));
}

inline std::vector<ExtPoly> level_generators(ShiftLevel l, int max_k) {
  std::vector<ExtPoly> gens;
  for (int i : level_coordinates(l)) gens.push_back(ext_x(l, i));
  for (int k = 1; k <= max_k; ++k) gens.push_back(ext_qs(l, k));
  return gens;
}

}  // namespace detail

inline IdentityReport verify_product_rule(const VerifyRanges& r) {
  IdentityReport rep{"product-rule", {}};
  const auto monos = moment_monomials(r.max_k, r.max_grading);
  std::vector<MomentPoly> images;
  images.reserve(monos.size());
  for (const auto& u : monos) images.push_back(apply_A(u));
  for (std::size_t a = 0; a < monos.size(); ++a) {
    for (std::size_t b = a; b < monos.size(); ++b) {
      const MomentPoly& u = monos[a];
      const MomentPoly& v = monos[b];
      MomentPoly res = apply_A(u * v) - images[a] * v - u * images[b] - gamma(u, v) * Coeff(2L);
      detail::record(rep, to_string(u) + " | " + to_string(v), res);
    }
  }
  return rep;
}

inline IdentityReport verify_petrov_degeneration(const VerifyRanges& r) {
  IdentityReport rep{"petrov-degeneration", {}};
  for (int k = 1; k <= r.max_petrov_k; ++k) {
    const MomentPoly u = moment_q(k);
    IdentityCase c{rep.identity, "q" + std::to_string(k), true, {}};
    try {
      const MomentPoly res = degenerate_to_petrov(apply_A(u)) - apply_A_petrov(u);
      c.pass = res.is_zero();
      if (!c.pass) c.witness = to_string(res);
    } catch (const Error& e) {
      c.pass = false;
      c.witness = e.what();
    }
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

inline IdentityReport verify_consistent_shift(const VerifyRanges& r) {
  IdentityReport rep{"consistent-shift", {}};
  for (int N = 0; N <= r.max_level; ++N) {
    for (int M = 0; M <= r.max_level; ++M) {
      const ShiftLevel l{N, M};
      const auto gens = detail::level_generators(l, r.max_k);
      for (const ShiftLevel to : {ShiftLevel{N + 1, M}, ShiftLevel{N, M + 1}}) {
        std::vector<ExtPoly> shifted;
        for (const auto& g : gens) shifted.push_back(shift_rewrite(g, to));
        for (std::size_t a = 0; a < gens.size(); ++a) {
          for (std::size_t b = a; b < gens.size(); ++b) {
            const ExtPoly lhs = shift_rewrite(gamma_NM(gens[a], gens[b]), to);
            const ExtPoly rhs = gamma_NM(shifted[a], shifted[b]);
            detail::record(rep,
                           "(" + level_string(l) + ")->(" + level_string(to) + ") " +
                               to_string(gens[a]) + " | " + to_string(gens[b]),
                           lhs - rhs);
          }
        }
      }
    }
  }
  return rep;
}

inline IdentityReport verify_lem111(const VerifyRanges& r) {
  IdentityReport rep{"lem111", {}};
  for (int N = 0; N <= r.max_level; ++N)
    for (int M = 0; M <= r.max_level; ++M)
      for (int k = 0; k <= r.max_k; ++k)
        for (int l = k; l <= r.max_k; ++l) {
          const ShiftLevel lv{N, M};
          const PhiPoly phi = PhiPoly::monomial(k), psi = PhiPoly::monomial(l);
          const ExtPoly res = gamma_NM(q_nm_of_phi(phi, lv), q_nm_of_phi(psi, lv)) -
                              gamma_bracket_double(phi, psi, lv);
          detail::record(rep,
                         "(" + level_string(lv) + ") t^" + std::to_string(k) + " | t^" +
                             std::to_string(l),
                         res);
        }
  return rep;
}

inline IdentityReport verify_lem222(const VerifyRanges& r) {
  IdentityReport rep{"lem222", {}};
  for (int N = 0; N <= r.max_level; ++N)
    for (int M = 0; M <= r.max_level; ++M) {
      const ShiftLevel lv{N, M};
      const auto gens = detail::level_generators(lv, r.max_k);
      for (int k = 0; k <= r.max_k; ++k) {
        const PhiPoly phi = PhiPoly::monomial(k);
        const ExtPoly qphi = q_nm_of_phi(phi, lv);
        for (const auto& u : gens) {
          const ExtPoly res = gamma_NM(qphi, u) - gamma_bracket_single(phi, u);
          detail::record(rep, "(" + level_string(lv) + ") t^" + std::to_string(k) + " | " + to_string(u),
                         res);
        }
      }
    }
  return rep;
}

inline IdentityReport verify_gamma_nat_vs_moment(const VerifyRanges& r) {
  IdentityReport rep{"gamma-nat-vs-moment", {}};
  for (int n = 0; n <= r.max_trunc; ++n)
    for (int m = 0; m <= r.max_trunc; ++m) {
      const Truncation t{n, m};
      for (int k = 1; k <= r.max_k; ++k)
        for (int l = k; l <= r.max_k; ++l) {
          const NatPoly lhs = gamma_alpha_beta(moment_image(t, k), moment_image(t, l));
          const NatPoly rhs = substitute_moments(gamma(moment_q(k), moment_q(l)), t);
          detail::record(rep,
                         "n=" + std::to_string(n) + ",m=" + std::to_string(m) + " q" +
                             std::to_string(k) + " | q" + std::to_string(l),
                         lhs - rhs);
        }
    }
  return rep;
}

inline std::vector<MomentPoly> default_nat_inputs() {
  std::vector<MomentPoly> us;
  for (int k = 1; k <= 5; ++k) us.push_back(moment_q(k));
  us.push_back(moment_q(1) * moment_q(2));
  us.push_back(moment_q(1) * moment_q(1));
  us.push_back(moment_q(1) * moment_q(3));
  return us;
}

inline IdentityReport verify_a_nat_vs_a(const VerifyRanges& r) {
  IdentityReport rep{"a-nat-vs-a", {}};
  const auto inputs = r.nat_inputs.empty() ? default_nat_inputs() : r.nat_inputs;
  for (const auto& u : inputs) {
    const MomentPoly au = apply_A(u);
    for (int n = 0; n <= r.max_trunc; ++n)
      for (int m = 0; m <= r.max_trunc; ++m) {
        if (n == 0 && m == 0) continue;
        const Truncation t{n, m};
        const NatPoly res = reduce_mod_simplex(apply_A_nat(u, t) - substitute_moments(au, t));
        detail::record(rep, "n=" + std::to_string(n) + ",m=" + std::to_string(m) + " " + to_string(u),
                       res);
      }
  }
  return rep;
}

/// Dispatch by identity name; throws unknown_name for anything else.
inline IdentityReport verify_identity(const std::string& name, const VerifyRanges& r) {
  if (name == "product-rule") return verify_product_rule(r);
  if (name == "lem111") return verify_lem111(r);
  if (name == "lem222") return verify_lem222(r);
  if (name == "consistent-shift") return verify_consistent_shift(r);
  if (name == "gamma-nat-vs-moment") return verify_gamma_nat_vs_moment(r);
  if (name == "a-nat-vs-a") return verify_a_nat_vs_a(r);
  if (name == "petrov-degeneration") return verify_petrov_degeneration(r);
  throw Error(ErrorCode::unknown_name, "unknown identity: " + name);
}

}  // namespace thoma
