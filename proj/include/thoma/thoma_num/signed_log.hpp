#pragma once

#include <cmath>
#include <limits>

namespace thoma {

/// Real number stored as sign * exp(log_mag).
struct SignedLog {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();

  static SignedLog zero() { return {}; }
  static SignedLog from_log(double l, int s = 1) { return s == 0 ? SignedLog{} : SignedLog{s, l}; }
  static SignedLog from_double(double v) {
    if (v == 0.0) return {};
    return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }

  bool is_zero() const { return sign == 0; }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }

  friend SignedLog operator*(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.sign * b.sign, a.log_mag + b.log_mag};
  }
  friend SignedLog operator/(SignedLog a, SignedLog b) {
    if (a.sign == 0) return {};
    return {a.sign * b.sign, a.log_mag - b.log_mag};
  }
  friend SignedLog operator-(SignedLog a) { return {-a.sign, a.log_mag}; }
  friend SignedLog operator+(SignedLog a, SignedLog b);
  friend SignedLog operator-(SignedLog a, SignedLog b) { return a + (-b); }
};

/// Streaming sum in log space; positive and negative parts are kept apart.
class LogSum {
 public:
  void add(SignedLog x) {
    if (x.sign > 0) push(pos_max_, pos_acc_, x.log_mag);
    if (x.sign < 0) push(neg_max_, neg_acc_, x.log_mag);
  }
  LogSum& operator+=(SignedLog x) {
    add(x);
    return *this;
  }

  SignedLog result() const {
    const double lp = pos_acc_ > 0 ? pos_max_ + std::log(pos_acc_) : -kInf;
    const double ln = neg_acc_ > 0 ? neg_max_ + std::log(neg_acc_) : -kInf;
    if (lp == -kInf && ln == -kInf) return {};
    if (lp == ln) return {};
    if (lp > ln) return {1, lp + std::log1p(-std::exp(ln - lp))};
    return {-1, ln + std::log1p(-std::exp(lp - ln))};
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  static void push(double& mx, double& acc, double l) {
    if (acc == 0.0) {
      mx = l;
      acc = 1.0;
    } else if (l > mx) {
      acc = acc * std::exp(mx - l) + 1.0;
      mx = l;
    } else {
      acc += std::exp(l - mx);
    }
  }
  double pos_max_ = -kInf, pos_acc_ = 0.0;
  double neg_max_ = -kInf, neg_acc_ = 0.0;
};

inline SignedLog operator+(SignedLog a, SignedLog b) {
  LogSum s;
  s.add(a);
  s.add(b);
  return s.result();
}

/// log(1 + e^l)
inline double log1p_exp(double l) { return l > 0 ? l + std::log1p(std::exp(-l)) : std::log1p(std::exp(l)); }

/// e^y - 1 in log space.
inline SignedLog sl_expm1(double y) {
  if (y > 30.0) return {1, y + std::log1p(-std::exp(-y))};
  return SignedLog::from_double(std::expm1(y));
}

}  // namespace thoma
