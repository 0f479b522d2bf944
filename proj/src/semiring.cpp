#include "weylp/semiring.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace weylp {

const Rational& Tropical::value() const {
  if (neg_inf_) throw std::domain_error("tropical -inf has no finite value");
  return value_;
}

Tropical operator+(const Tropical& a, const Tropical& b) {
  if (a.neg_inf_) return b;
  if (b.neg_inf_) return a;
  return a.value_ < b.value_ ? b : a;
}

Tropical operator*(const Tropical& a, const Tropical& b) {
  if (a.neg_inf_ || b.neg_inf_) return Tropical::neg_inf();
  return Tropical(a.value_ + b.value_);
}

Tropical operator/(const Tropical& a, const Tropical& b) {
  if (b.neg_inf_) throw DivisionByZero("tropical division by -inf");
  if (a.neg_inf_) return a;
  return Tropical(a.value_ - b.value_);
}

std::ostream& operator<<(std::ostream& os, const Tropical& t) { return os << t.str(); }

LogScaled operator+(const LogScaled& a, const LogScaled& b) {
  double eps = LogScaled::pick_eps(a, b);
  double hi = std::max(a.log_, b.log_);
  double lo = std::min(a.log_, b.log_);
  if (std::isinf(lo) && lo < 0) return {hi, eps};
  return {hi + eps * std::log1p(std::exp((lo - hi) / eps)), eps};
}

std::string to_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace weylp
