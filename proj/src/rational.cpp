#include "weylp/rational.hpp"

#include <cctype>
#include <climits>
#include <ostream>

namespace weylp {

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) {
  if (v_.get_den() == 0) throw DivisionByZero("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class n = parse_integer(s.substr(0, slash), text);
    mpz_class d = parse_integer(s.substr(slash + 1), text);
    if (d == 0) throw DivisionByZero("rational with zero denominator: '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    mpz_class whole = parse_integer(ip, text);
    mpz_class frac = parse_integer(fp, text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpq_class q(whole * scale + frac, scale);
    q.canonicalize();
    if (neg) q = -q;
    return Rational(q);
  }
  return Rational(parse_integer(s, text));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

bool Rational::fits_long() const { return is_integer() && v_.get_num().fits_slong_p(); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw DivisionByZero("zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(mpq_class(n, d));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational rat_arith(const Rational& a, const Rational& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw std::invalid_argument("unknown arithmetic op");
}

}  // namespace weylp
