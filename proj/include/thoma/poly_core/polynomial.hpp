#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thoma/error.hpp"
#include "thoma/poly_core/coeff.hpp"

namespace thoma {

/// Generator kinds: moments q_k, shifted moments q_k^(N,M), coordinates x_i (i != 0).
enum class GenKind : std::uint8_t { q, qs, x };

struct Gen {
  GenKind kind = GenKind::q;
  int index = 1;

  static constexpr Gen q(int k) { return {GenKind::q, k}; }
  static constexpr Gen qs(int k) { return {GenKind::qs, k}; }
  static constexpr Gen x(int i) { return {GenKind::x, i}; }

  /// deg x_i = 1, deg q_k = k + 1.
  int grading() const { return kind == GenKind::x ? 1 : index + 1; }
  auto operator<=>(const Gen&) const = default;
};

/// Shift level (N, M) of the extended algebra P^(N,M).
struct ShiftLevel {
  int N = 0;
  int M = 0;
  auto operator<=>(const ShiftLevel&) const = default;
};

/// Truncation (n, m): coordinates x_1..x_n and x_-1..x_-m.
struct Truncation {
  int n = 0;
  int m = 0;
  auto operator<=>(const Truncation&) const = default;

  std::vector<int> indices() const {
    std::vector<int> idx;
    for (int j = m; j >= 1; --j) idx.push_back(-j);
    for (int i = 1; i <= n; ++i) idx.push_back(i);
    return idx;
  }
};

inline std::string level_string(const ShiftLevel& l) {
  return std::to_string(l.N) + "," + std::to_string(l.M);
}

inline std::string coordinate_name(int i) {
  return i > 0 ? "a" + std::to_string(i) : "b" + std::to_string(-i);
}

/// Sorted product of generator powers with positive exponents.
class Monomial {
 public:
  using Factor = std::pair<Gen, int>;

  Monomial() = default;
  static Monomial of(Gen g, int e = 1) {
    Monomial m;
    if (e > 0) m.f_.emplace_back(g, e);
    return m;
  }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_unit() const { return f_.empty(); }

  int exponent(Gen g) const {
    for (const auto& [h, e] : f_)
      if (h == g) return e;
    return 0;
  }

  int grading() const {
    int d = 0;
    for (const auto& [g, e] : f_) d += g.grading() * e;
    return d;
  }

  int degree() const {
    int d = 0;
    for (const auto& [g, e] : f_) d += e;
    return d;
  }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial r;
    r.f_.reserve(x.f_.size() + y.f_.size());
    auto i = x.f_.begin(), j = y.f_.begin();
    while (i != x.f_.end() || j != y.f_.end()) {
      if (j == y.f_.end() || (i != x.f_.end() && i->first < j->first)) {
        r.f_.push_back(*i++);
      } else if (i == x.f_.end() || j->first < i->first) {
        r.f_.push_back(*j++);
      } else {
        r.f_.emplace_back(i->first, i->second + j->second);
        ++i, ++j;
      }
    }
    return r;
  }

  /// Remove one power of g; returns the removed exponent (0 if absent).
  std::pair<int, Monomial> lower(Gen g) const {
    Monomial r;
    int e = 0;
    for (const auto& f : f_) {
      if (f.first == g) {
        e = f.second;
        if (e > 1) r.f_.emplace_back(g, e - 1);
      } else {
        r.f_.push_back(f);
      }
    }
    return {e, r};
  }

  /// Drop g entirely; returns its exponent.
  std::pair<int, Monomial> without(Gen g) const {
    Monomial r;
    int e = 0;
    for (const auto& f : f_) {
      if (f.first == g)
        e = f.second;
      else
        r.f_.push_back(f);
    }
    return {e, r};
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Factor> f_;
};

/// Ring of polynomials in q_k only (k >= 1).
struct MomentFamily {
  bool admits(Gen g) const { return g.kind == GenKind::q && g.index >= 1; }
  std::string gen_name(Gen g) const { return "q" + std::to_string(g.index); }
  std::string describe() const { return "moment"; }
  bool operator==(const MomentFamily&) const = default;
};

/// Extended algebra P^(N,M): x_i (-M <= i <= N, i != 0) and q_k^(N,M).
struct ExtFamily {
  ShiftLevel level;
  bool admits(Gen g) const {
    if (g.kind == GenKind::qs) return g.index >= 1;
    if (g.kind == GenKind::x) return g.index != 0 && g.index <= level.N && g.index >= -level.M;
    return false;
  }
  std::string gen_name(Gen g) const {
    if (g.kind == GenKind::x) return coordinate_name(g.index);
    return "qs" + std::to_string(g.index) + "@" + level_string(level);
  }
  std::string describe() const { return "extended(" + level_string(level) + ")"; }
  bool operator==(const ExtFamily&) const = default;
};

/// Polynomials in natural coordinates of a truncation.
struct NatFamily {
  Truncation trunc;
  bool admits(Gen g) const {
    return g.kind == GenKind::x && g.index != 0 && g.index <= trunc.n && g.index >= -trunc.m;
  }
  std::string gen_name(Gen g) const { return coordinate_name(g.index); }
  std::string describe() const {
    return "natural(" + std::to_string(trunc.n) + "," + std::to_string(trunc.m) + ")";
  }
  bool operator==(const NatFamily&) const = default;
};

/// Unrestricted family used while lowering parsed expressions.
struct RawFamily {
  std::optional<ShiftLevel> level;
  bool admits(Gen g) const { return g.kind != GenKind::x || g.index != 0; }
  std::string gen_name(Gen g) const {
    switch (g.kind) {
      case GenKind::q: return "q" + std::to_string(g.index);
      case GenKind::x: return coordinate_name(g.index);
      case GenKind::qs:
        return "qs" + std::to_string(g.index) + "@" + (level ? level_string(*level) : "?");
    }
    return "?";
  }
  std::string describe() const { return "raw"; }
  bool operator==(const RawFamily&) const = default;
};

template <class F>
concept PolyFamily = std::equality_comparable<F> && requires(const F& f, Gen g) {
  { f.admits(g) } -> std::convertible_to<bool>;
  { f.gen_name(g) } -> std::convertible_to<std::string>;
  { f.describe() } -> std::convertible_to<std::string>;
};

/// Sparse polynomial with Coeff coefficients over the generators admitted by Family.
template <PolyFamily Family>
class Polynomial {
 public:
  using Terms = std::map<Monomial, Coeff>;

  Polynomial() = default;
  explicit Polynomial(Family ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(Family ctx, const Coeff& c) {
    Polynomial p(std::move(ctx));
    p.add_term(Monomial{}, c);
    return p;
  }
  static Polynomial generator(Family ctx, Gen g, int e = 1) {
    Polynomial p(std::move(ctx));
    p.check_gen(g);
    p.add_term(Monomial::of(g, e), Coeff(1L));
    return p;
  }
  static Polynomial term(Family ctx, const Monomial& m, const Coeff& c) {
    Polynomial p(std::move(ctx));
    for (const auto& [g, e] : m.factors()) p.check_gen(g);
    p.add_term(m, c);
    return p;
  }

  const Family& family() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Maximal grading of a monomial; nullopt for the zero polynomial.
  std::optional<int> grading() const {
    if (terms_.empty()) return std::nullopt;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.grading());
    return d;
  }

  void add_term(const Monomial& m, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Coeff& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second = it->second * c;
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
  friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }
  friend Polynomial operator-(Polynomial x) {
    for (auto& [m, c] : x.terms_) c = -c;
    return x;
  }
  friend Polynomial operator*(Polynomial x, const Coeff& c) { return x *= c; }
  friend Polynomial operator*(const Coeff& c, Polynomial x) { return x *= c; }
  friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
    x.check_same(y);
    Polynomial r(x.ctx_);
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) r.add_term(mx * my, cx * cy);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& x, const Polynomial& y) {
    return x.ctx_ == y.ctx_ && x.terms_ == y.terms_;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ctx_, Coeff(1L)), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      e >>= 1u;
      if (e) b = b * b;
    }
    return r;
  }

  /// Partial derivative with respect to an admitted generator.
  Polynomial derivative(Gen g) const {
    check_gen(g);
    Polynomial r(ctx_);
    for (const auto& [m, c] : terms_) {
      auto [e, rest] = m.lower(g);
      if (e > 0) r.add_term(rest, c * mpq_class(e));
    }
    return r;
  }

  /// Generators that occur in some monomial, in sorted order.
  std::vector<Gen> variables() const {
    std::vector<Gen> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& [g, e] : m.factors()) vs.push_back(g);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  template <class Fn>
  Polynomial map_coeffs(Fn&& fn) const {
    Polynomial r(ctx_);
    for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
    return r;
  }

  /// Re-tag the polynomial with another family; every generator must be admitted there.
  template <PolyFamily Target>
  Polynomial<Target> as(Target ctx) const {
    Polynomial<Target> r(std::move(ctx));
    for (const auto& [m, c] : terms_) {
      for (const auto& [g, e] : m.factors())
        if (!r.family().admits(g))
          throw Error(ErrorCode::unknown_generator,
                      "generator " + ctx_.gen_name(g) + " not in " + r.family().describe());
      r.add_term(m, c);
    }
    return r;
  }

  /// Numeric evaluation given generator values and parameter values.
  template <class GenValue>
  double evaluate(GenValue&& value, const ParamValues& params) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = c.evaluate(params);
      for (const auto& [g, e] : m.factors()) t *= std::pow(value(g), e);
      total += t;
    }
    return total;
  }

  void check_gen(Gen g) const {
    if (!ctx_.admits(g))
      throw Error(ErrorCode::unknown_generator,
                  "generator " + RawFamily{}.gen_name(g) + " not in " + ctx_.describe());
  }
  void check_same(const Polynomial& o) const {
    if (!(ctx_ == o.ctx_))
      throw Error(ErrorCode::level_mismatch,
                  "mismatched polynomial families: " + ctx_.describe() + " vs " + o.ctx_.describe());
  }

 private:
  Family ctx_{};
  Terms terms_;
};

using MomentPoly = Polynomial<MomentFamily>;
using ExtPoly = Polynomial<ExtFamily>;
using NatPoly = Polynomial<NatFamily>;
using RawPoly = Polynomial<RawFamily>;

inline MomentPoly moment_q(int k) {
  if (k == 0) return MomentPoly::constant({}, Coeff(1L));
  return MomentPoly::generator({}, Gen::q(k));
}
inline ExtPoly ext_qs(ShiftLevel l, int k) {
  if (k == 0) return ExtPoly::constant({l}, Coeff(1L));
  return ExtPoly::generator({l}, Gen::qs(k));
}
inline ExtPoly ext_x(ShiftLevel l, int i) { return ExtPoly::generator({l}, Gen::x(i)); }
inline NatPoly nat_x(Truncation t, int i) { return NatPoly::generator({t}, Gen::x(i)); }

/// Ring homomorphism determined by generator images; powers are cached.
template <PolyFamily Target, PolyFamily Source, class Image>
Polynomial<Target> substitute(const Polynomial<Source>& p, Target ctx, Image&& image) {
  std::map<Gen, std::vector<Polynomial<Target>>> powers;
  auto power = [&](Gen g, int e) -> const Polynomial<Target>& {
    auto& ps = powers[g];
    if (ps.empty()) {
      ps.push_back(Polynomial<Target>::constant(ctx, Coeff(1L)));
      ps.push_back(image(g));
    }
    while (static_cast<int>(ps.size()) <= e) ps.push_back(ps.back() * ps[1]);
    return ps[e];
  };
  Polynomial<Target> r(ctx);
  for (const auto& [m, c] : p.terms()) {
    Polynomial<Target> t = Polynomial<Target>::constant(ctx, c);
    for (const auto& [g, e] : m.factors()) t *= power(g, e);
    r += t;
  }
  return r;
}

}  // namespace thoma
