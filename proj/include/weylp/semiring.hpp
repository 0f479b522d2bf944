#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>

#include "weylp/rational.hpp"

namespace weylp {

/// A denominator of a birational map vanished.
///
/// `what` names the vanishing expression (e.g. "1+a_1 f_1" or "P^2_0").
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error("pole: " + what), where_(what) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Max-plus number: `+` is max, `*` is ordinary addition, `/` is subtraction.
///
/// The operator spelling lets the subtraction-free templates (multiplicative
/// Weyl action, qP_IV, lattice action) run unchanged in tropical mode.
/// -inf is the additive identity and absorbs under `*`.
class Tropical {
 public:
  Tropical() : value_(0) {}
  Tropical(Rational v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Tropical(I v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static Tropical neg_inf() {
    Tropical t;
    t.neg_inf_ = true;
    return t;
  }

  bool is_neg_inf() const { return neg_inf_; }
  /// Finite value; throws on -inf.
  const Rational& value() const;
  std::string str() const { return neg_inf_ ? "-inf" : value_.str(); }
  double to_double() const {
    return neg_inf_ ? -std::numeric_limits<double>::infinity() : value_.to_double();
  }

  friend Tropical operator+(const Tropical& a, const Tropical& b);
  friend Tropical operator*(const Tropical& a, const Tropical& b);
  friend Tropical operator/(const Tropical& a, const Tropical& b);
  Tropical& operator+=(const Tropical& o) { return *this = *this + o; }
  Tropical& operator*=(const Tropical& o) { return *this = *this * o; }
  Tropical& operator/=(const Tropical& o) { return *this = *this / o; }

  friend bool operator==(const Tropical& a, const Tropical& b) {
    return a.neg_inf_ == b.neg_inf_ && (a.neg_inf_ || a.value_ == b.value_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Tropical& t);

 private:
  Rational value_;
  bool neg_inf_ = false;
};

/// Positive real number stored as L = eps*log(x).
///
/// `+` is evaluated as eps*logsumexp(La/eps, Lb/eps), so values e^{X/eps}
/// with |X| up to 1e2 and eps down to 1e-4 never overflow. Used to probe the
/// ultra-discrete limit of subtraction-free maps.
class LogScaled {
 public:
  LogScaled() = default;
  LogScaled(double log_value, double eps) : log_(log_value), eps_(eps) {}
  static LogScaled from_exponent(double exponent, double eps) { return {exponent, eps}; }

  double log_value() const { return log_; }
  double eps() const { return eps_; }

  friend LogScaled operator+(const LogScaled& a, const LogScaled& b);
  friend LogScaled operator*(const LogScaled& a, const LogScaled& b) {
    return {a.log_ + b.log_, pick_eps(a, b)};
  }
  friend LogScaled operator/(const LogScaled& a, const LogScaled& b) {
    return {a.log_ - b.log_, pick_eps(a, b)};
  }
  LogScaled& operator+=(const LogScaled& o) { return *this = *this + o; }
  LogScaled& operator*=(const LogScaled& o) { return *this = *this * o; }
  LogScaled& operator/=(const LogScaled& o) { return *this = *this / o; }

 private:
  static double pick_eps(const LogScaled& a, const LogScaled& b) {
    return std::isnan(a.eps_) ? b.eps_ : a.eps_;
  }
  double log_ = 0.0;
  double eps_ = std::numeric_limits<double>::quiet_NaN();
};

// Semiring helpers used by the generic maps.

inline Rational unit_like(const Rational&) { return Rational(1); }
inline double unit_like(double) { return 1.0; }
inline Tropical unit_like(const Tropical&) { return Tropical(0); }
inline LogScaled unit_like(const LogScaled& x) { return {0.0, x.eps()}; }

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Tropical& x) { return x.is_neg_inf(); }
inline bool is_zero(const LogScaled& x) { return std::isinf(x.log_value()) && x.log_value() < 0; }

/// Division that reports a vanishing denominator as a PoleError naming it.
template <class S>
S checked_div(const S& num, const S& den, const std::string& what) {
  if (is_zero(den)) throw PoleError(what);
  return num / den;
}

/// x^n for integer n using only the semiring operations.
template <class S>
S ipow(const S& x, int n) {
  S result = unit_like(x);
  if (n >= 0) {
    for (int k = 0; k < n; ++k) result = result * x;
  } else {
    for (int k = 0; k < -n; ++k) result = result / x;
  }
  return result;
}

inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(const Tropical& x) { return x.str(); }
std::string to_string(double x);

}  // namespace weylp

namespace Eigen {
template <>
struct NumTraits<weylp::Tropical> : GenericNumTraits<weylp::Tropical> {
  using Real = weylp::Tropical;
  using NonInteger = weylp::Tropical;
  using Literal = weylp::Tropical;
  using Nested = weylp::Tropical;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static inline int digits10() { return 0; }
};
template <>
struct NumTraits<weylp::LogScaled> : GenericNumTraits<weylp::LogScaled> {
  using Real = weylp::LogScaled;
  using NonInteger = weylp::LogScaled;
  using Literal = weylp::LogScaled;
  using Nested = weylp::LogScaled;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 1
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
