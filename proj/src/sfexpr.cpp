#include "weylp/sfexpr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace weylp {

SfExpr SfExpr::constant(const Rational& c) {
  if (c.sign() <= 0) throw std::invalid_argument("subtraction-free constants must be positive, got " + c.str());
  return SfExpr(std::make_shared<const Node>(Node{Kind::constant, c, {}, {}}));
}

SfExpr SfExpr::variable(std::string name) {
  return SfExpr(std::make_shared<const Node>(Node{Kind::variable, Rational(0), std::move(name), {}}));
}

SfExpr SfExpr::binary(Kind k, const SfExpr& a, const SfExpr& b) {
  return SfExpr(std::make_shared<const Node>(Node{k, Rational(0), {}, {a, b}}));
}

SfExpr operator+(const SfExpr& a, const SfExpr& b) { return SfExpr::binary(SfExpr::Kind::add, a, b); }
SfExpr operator*(const SfExpr& a, const SfExpr& b) { return SfExpr::binary(SfExpr::Kind::mul, a, b); }
SfExpr operator/(const SfExpr& a, const SfExpr& b) { return SfExpr::binary(SfExpr::Kind::div, a, b); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  SfExpr run() {
    SfExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("expression parse error at " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') fail("subtraction is not allowed in a subtraction-free expression");
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SfExpr expr() {
    SfExpr e = term();
    while (eat('+')) e = e + term();
    return e;
  }
  SfExpr term() {
    SfExpr e = power();
    for (;;) {
      if (eat('*')) e = e * power();
      else if (eat('/')) e = e / power();
      else return e;
    }
  }
  SfExpr power() {
    SfExpr base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a positive integer exponent");
    int n = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (n < 1) fail("exponent must be >= 1");
    SfExpr r = base;
    for (int k = 1; k < n; ++k) r = r * base;
    return r;
  }
  SfExpr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SfExpr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return SfExpr::constant(Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return SfExpr::variable(std::string(s_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SfExpr SfExpr::parse(std::string_view text) { return Parser(text).run(); }

void SfExpr::collect(std::vector<std::string>& out) const {
  if (kind() == Kind::variable) {
    if (std::find(out.begin(), out.end(), name()) == out.end()) out.push_back(name());
    return;
  }
  for (const auto& c : node_->children) c.collect(out);
}

std::vector<std::string> SfExpr::variables() const {
  std::vector<std::string> out;
  collect(out);
  return out;
}

std::string SfExpr::str() const {
  switch (kind()) {
    case Kind::constant: return value().str();
    case Kind::variable: return name();
    case Kind::add: return "(" + lhs().str() + "+" + rhs().str() + ")";
    case Kind::mul: return lhs().str() + "*" + rhs().str();
    case Kind::div: return lhs().str() + "/(" + rhs().str() + ")";
  }
  return "?";
}

EvalResult eval_expr(const SfExpr& e, const std::map<std::string, Rational>& point, SemiringKind kind) {
  EvalResult r{kind, Rational(0), Tropical(0)};
  if (kind == SemiringKind::classical) {
    r.classical = e.evaluate(point);
  } else {
    std::map<std::string, Tropical> tp;
    for (const auto& [k, v] : point) tp.emplace(k, Tropical(v));
    r.tropical = e.evaluate(tp);
  }
  return r;
}

std::vector<ProbeRow> ultradiscrete_limit_probe(const SfExpr& e,
                                                const std::map<std::string, Rational>& point,
                                                const std::vector<double>& epsilons) {
  std::map<std::string, Tropical> tp;
  for (const auto& [k, v] : point) tp.emplace(k, Tropical(v));
  const double trop = e.evaluate(tp).to_double();
  std::vector<ProbeRow> rows;
  for (double eps : epsilons) {
    if (!(eps > 0)) throw std::invalid_argument("epsilon must be positive");
    std::map<std::string, LogScaled> lp;
    for (const auto& [k, v] : point) lp.emplace(k, LogScaled(v.to_double(), eps));
    double val = lp.empty() ? e.evaluate(std::map<std::string, LogScaled>{{"", LogScaled(0, eps)}}).log_value()
                            : e.evaluate(lp).log_value();
    rows.push_back({eps, val, trop, std::abs(val - trop)});
  }
  return rows;
}

}  // namespace weylp
