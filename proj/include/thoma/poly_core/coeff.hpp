#pragma once

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>

#include "thoma/error.hpp"

namespace thoma {

/// Symbolic parameters of the coefficient ring. `theta` may carry negative exponents.
enum class Param : std::uint8_t { theta = 0, s1, s2, a, tau };
inline constexpr std::size_t kParamCount = 5;

inline const char* param_name(Param p) {
  static constexpr const char* names[kParamCount] = {"theta", "s1", "s2", "pa", "ptau"};
  return names[static_cast<std::size_t>(p)];
}

/// Numeric values for every parameter, used when evaluating coefficients.
struct ParamValues {
  double theta = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double a = 0.0;
  double tau = 0.0;

  double operator[](Param p) const {
    switch (p) {
      case Param::theta: return theta;
      case Param::s1: return s1;
      case Param::s2: return s2;
      case Param::a: return a;
      case Param::tau: return tau;
    }
    return 0.0;
  }
};

/// Exponent vector of theta^e * s1^e1 * s2^e2 * pa^e3 * ptau^e4.
struct ParamMonomial {
  std::array<int, kParamCount> exps{};

  static ParamMonomial of(Param p, int e = 1) {
    ParamMonomial m;
    m.exps[static_cast<std::size_t>(p)] = e;
    return m;
  }
  int operator[](Param p) const { return exps[static_cast<std::size_t>(p)]; }
  bool is_unit() const {
    for (int e : exps)
      if (e != 0) return false;
    return true;
  }
  int total() const {
    int t = 0;
    for (int e : exps) t += std::abs(e);
    return t;
  }
  ParamMonomial operator*(const ParamMonomial& o) const {
    ParamMonomial r;
    for (std::size_t i = 0; i < kParamCount; ++i) r.exps[i] = exps[i] + o.exps[i];
    return r;
  }
  bool operator==(const ParamMonomial&) const = default;
};

/// Print-friendly total order: lower total degree first, then theta-heavy first.
struct ParamMonomialOrder {
  bool operator()(const ParamMonomial& x, const ParamMonomial& y) const {
    const int tx = x.total(), ty = y.total();
    if (tx != ty) return tx < ty;
    return x.exps > y.exps;
  }
};

inline std::string rational_string(const mpq_class& r) { return r.get_str(); }

/// Element of Q[theta, theta^-1, s1, s2, pa, ptau] with exact rational coefficients.
class Coeff {
 public:
  using Terms = std::map<ParamMonomial, mpq_class, ParamMonomialOrder>;

  Coeff() = default;
  Coeff(long v) { add_term(ParamMonomial{}, mpq_class(v)); }
  Coeff(const mpq_class& v) { add_term(ParamMonomial{}, v); }
  Coeff(const mpq_class& v, const ParamMonomial& m) { add_term(m, v); }

  static Coeff param(Param p, int e = 1) { return Coeff(mpq_class(1), ParamMonomial::of(p, e)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
  }
  mpq_class constant_term() const {
    auto it = terms_.find(ParamMonomial{});
    return it == terms_.end() ? mpq_class(0) : it->second;
  }

  void add_term(const ParamMonomial& m, const mpq_class& r) {
    if (sgn(r) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, r);
    if (!inserted) {
      it->second += r;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Coeff& operator+=(const Coeff& o) {
    for (const auto& [m, r] : o.terms_) add_term(m, r);
    return *this;
  }
  Coeff& operator-=(const Coeff& o) {
    for (const auto& [m, r] : o.terms_) add_term(m, -r);
    return *this;
  }
  Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
  Coeff& operator*=(const mpq_class& r) {
    if (sgn(r) == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= r;
    }
    return *this;
  }

  friend Coeff operator+(Coeff x, const Coeff& y) { return x += y; }
  friend Coeff operator-(Coeff x, const Coeff& y) { return x -= y; }
  friend Coeff operator-(Coeff x) {
    for (auto& [m, c] : x.terms_) c = -c;
    return x;
  }
  friend Coeff operator*(const Coeff& x, const Coeff& y) {
    Coeff r;
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) r.add_term(mx * my, cx * cy);
    return r;
  }
  friend Coeff operator*(Coeff x, const mpq_class& r) { return x *= r; }
  friend bool operator==(const Coeff& x, const Coeff& y) { return x.terms_ == y.terms_; }

  Coeff pow(unsigned e) const {
    Coeff r(1L), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      e >>= 1u;
      if (e) b = b * b;
    }
    return r;
  }

  /// Multiplicative inverse; only single terms whose monomial is a pure theta power qualify.
  Coeff inverse() const {
    if (terms_.size() != 1)
      throw Error(ErrorCode::invalid_argument, "coefficient is not invertible");
    const auto& [m, r] = *terms_.begin();
    ParamMonomial inv;
    for (std::size_t i = 0; i < kParamCount; ++i) {
      if (i != static_cast<std::size_t>(Param::theta) && m.exps[i] != 0)
        throw Error(ErrorCode::invalid_argument, "coefficient is not invertible");
      inv.exps[i] = -m.exps[i];
    }
    return Coeff(1 / r, inv);
  }

  /// Replace parameter `p` by `value` (negative exponents need an invertible value).
  Coeff substitute(Param p, const Coeff& value) const {
    const auto idx = static_cast<std::size_t>(p);
    std::map<int, Coeff> powers;
    auto power = [&](int e) -> const Coeff& {
      auto it = powers.find(e);
      if (it != powers.end()) return it->second;
      Coeff v = e >= 0 ? value.pow(static_cast<unsigned>(e))
                       : value.inverse().pow(static_cast<unsigned>(-e));
      return powers.emplace(e, std::move(v)).first->second;
    };
    Coeff r;
    for (const auto& [m, c] : terms_) {
      ParamMonomial rest = m;
      rest.exps[idx] = 0;
      r += Coeff(c, rest) * power(m.exps[idx]);
    }
    return r;
  }

  /// Set theta to 0; a surviving negative theta power is reported as failure.
  Coeff theta_to_zero() const {
    Coeff r;
    for (const auto& [m, c] : terms_) {
      const int e = m[Param::theta];
      if (e < 0)
        throw Error(ErrorCode::degeneration_failure, "residual negative power of theta");
      if (e == 0) r.add_term(m, c);
    }
    return r;
  }

  int min_exponent(Param p) const {
    int lo = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (first || m[p] < lo) lo = m[p];
      first = false;
    }
    return lo;
  }

  double evaluate(const ParamValues& v) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = c.get_d();
      for (std::size_t i = 0; i < kParamCount; ++i)
        if (m.exps[i] != 0) t *= std::pow(v[static_cast<Param>(i)], m.exps[i]);
      total += t;
    }
    return total;
  }

  /// Parseable text, e.g. `2 - 2*theta + theta^-1*s2`.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      mpq_class mag = abs(c);
      if (first) {
        if (sgn(c) < 0) out += "-";
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono = monomial_string(m);
      if (mono.empty()) {
        out += rational_string(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += rational_string(mag) + "*" + mono;
      }
    }
    return out;
  }

  static std::string monomial_string(const ParamMonomial& m) {
    std::string s;
    for (std::size_t i = 0; i < kParamCount; ++i) {
      const int e = m.exps[i];
      if (e == 0) continue;
      if (!s.empty()) s += "*";
      s += param_name(static_cast<Param>(i));
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  Terms terms_;
};

}  // namespace thoma
