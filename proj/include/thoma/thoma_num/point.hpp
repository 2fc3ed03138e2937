#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "thoma/error.hpp"
#include "thoma/poly_core/polynomial.hpp"

namespace thoma {

inline constexpr double kPointTolerance = 1e-12;

/// Point of the Thoma simplex: nonincreasing alpha, beta with total mass at most 1.
class ThomaPoint {
 public:
  ThomaPoint() = default;
  ThomaPoint(std::vector<double> alpha, std::vector<double> beta)
      : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    validate(alpha_, "alpha");
    validate(beta_, "beta");
    const double mass = total(alpha_) + total(beta_);
    if (mass > 1.0 + kPointTolerance)
      throw Error(ErrorCode::invalid_point, "total mass exceeds 1: " + std::to_string(mass));
    gamma_ = std::max(0.0, 1.0 - mass);
  }

  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double alpha_at(int i) const { return i >= 1 && i <= int(alpha_.size()) ? alpha_[i - 1] : 0.0; }
  double beta_at(int j) const { return j >= 1 && j <= int(beta_.size()) ? beta_[j - 1] : 0.0; }
  /// Natural coordinate x_i: alpha_i for i > 0, beta_{-i} for i < 0.
  double coordinate(int i) const { return i > 0 ? alpha_at(i) : beta_at(-i); }

  /// Drop the first N alphas and M betas; their mass moves to the atom at 0.
  ThomaPoint shifted(ShiftLevel l) const {
    auto drop = [](const std::vector<double>& v, int k) {
      return std::vector<double>(v.begin() + std::min<std::size_t>(v.size(), std::size_t(std::max(k, 0))),
                                 v.end());
    };
    return ThomaPoint(drop(alpha_, l.N), drop(beta_, l.M));
  }

 private:
  static double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }
  static void validate(const std::vector<double>& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i]) || v[i] < 0.0 || v[i] > 1.0 + kPointTolerance)
        throw Error(ErrorCode::invalid_point, std::string(name) + " entry out of [0,1]");
      if (i > 0 && v[i] > v[i - 1] + kPointTolerance)
        throw Error(ErrorCode::invalid_point, std::string(name) + " is not nonincreasing");
    }
  }

  std::vector<double> alpha_, beta_;
  double gamma_ = 1.0;
};

/// Numeric model parameters.
struct NumParams {
  double theta = 1.0;
  double s1 = 0.0;
  double s2 = 1.0;
  bool enforce_admissibility = false;

  /// Returns a warning string (empty if fine); throws when enforcement is on.
  std::string check() const {
    if (!(theta > 0.0)) throw Error(ErrorCode::invalid_argument, "theta must be positive");
    if (s2 > 0.0) return {};
    const std::string msg = "s2 = zz' is not positive; parameters may be inadmissible";
    if (enforce_admissibility) throw Error(ErrorCode::invalid_argument, msg);
    return msg;
  }
  ParamValues values() const { return {theta, s1, s2, 0.0, 0.0}; }
};

/// Atom of the measure: location and weight.
struct Atom {
  double loc;
  double weight;
};

/// Atoms alpha_i (weight alpha_i), -theta*beta_j (weight beta_j), 0 (weight gamma).
inline std::vector<Atom> thoma_measure(const ThomaPoint& p, double theta) {
  std::vector<Atom> atoms;
  for (double a : p.alpha())
    if (a > 0) atoms.push_back({a, a});
  for (double b : p.beta())
    if (b > 0) atoms.push_back({-theta * b, b});
  if (p.gamma() > 0) atoms.push_back({0.0, p.gamma()});
  return atoms;
}

/// Atoms with equal locations merged.
inline std::vector<Atom> merged_measure(const ThomaPoint& p, double theta) {
  auto atoms = thoma_measure(p, theta);
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.loc > y.loc; });
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (!out.empty() && out.back().loc == a.loc)
      out.back().weight += a.weight;
    else
      out.push_back(a);
  }
  return out;
}

/// q_k = sum alpha^{k+1} + (-theta)^k sum beta^{k+1}; q_0 = 1.
inline double eval_q(const ThomaPoint& p, int k, double theta) {
  if (k == 0) return 1.0;
  double s = 0.0, t = 0.0;
  for (double a : p.alpha()) s += std::pow(a, k + 1);
  for (double b : p.beta()) t += std::pow(b, k + 1);
  return s + std::pow(-theta, k) * t;
}

}  // namespace thoma
