#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

namespace weylp {

/// Raised by exact division when the divisor is zero.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
///
/// Serializes as "p/q", or "p" when the denominator is 1.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I n) : v_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& v);
  explicit Rational(const mpz_class& n) : v_(n) {}

  /// Parses "p", "p/q", or a finite decimal such as "-0.125" exactly.
  static Rational parse(std::string_view text);

  std::string str() const;
  double to_double() const { return v_.get_d(); }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  bool fits_long() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

/// Integer power; negative exponents invert (throws on 0^-n).
Rational pow(const Rational& base, int exponent);
Rational abs(const Rational& r);

enum class ArithOp { add, sub, mul, div };

/// Checked binary arithmetic; div by zero throws DivisionByZero.
Rational rat_arith(const Rational& a, const Rational& b, ArithOp op);

}  // namespace weylp

namespace Eigen {
template <>
struct NumTraits<weylp::Rational> : GenericNumTraits<weylp::Rational> {
  using Real = weylp::Rational;
  using NonInteger = weylp::Rational;
  using Literal = weylp::Rational;
  using Nested = weylp::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
  static inline weylp::Rational epsilon() { return weylp::Rational(0); }
  static inline weylp::Rational dummy_precision() { return weylp::Rational(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
