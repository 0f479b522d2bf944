#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "weylp/rational.hpp"
#include "weylp/semiring.hpp"

namespace weylp {

/// Expression tree over {positive constant, variable, +, *, /}.
///
/// There is no subtraction node, so every tree is subtraction-free and can be
/// evaluated in any of the semirings of semiring.hpp.
class SfExpr {
 public:
  enum class Kind { constant, variable, add, mul, div };

  static SfExpr constant(const Rational& c);
  static SfExpr variable(std::string name);
  friend SfExpr operator+(const SfExpr& a, const SfExpr& b);
  friend SfExpr operator*(const SfExpr& a, const SfExpr& b);
  friend SfExpr operator/(const SfExpr& a, const SfExpr& b);

  /// Parses e.g. "(a+b)/a", "2*x^3 + y". A '-' anywhere is rejected.
  static SfExpr parse(std::string_view text);

  Kind kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  const SfExpr& lhs() const { return node_->children[0]; }
  const SfExpr& rhs() const { return node_->children[1]; }

  std::vector<std::string> variables() const;
  std::string str() const;

  template <class S>
  S evaluate(const std::map<std::string, S>& point) const;

 private:
  struct Node {
    Kind kind;
    Rational value;
    std::string name;
    std::vector<SfExpr> children;
  };
  explicit SfExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static SfExpr binary(Kind k, const SfExpr& a, const SfExpr& b);
  void collect(std::vector<std::string>& out) const;

  std::shared_ptr<const Node> node_;
};

// A positive constant c embedded in each semiring. Tropically log c / log e^{1/eps}
// vanishes, so constants become the tropical unit 0.
inline Rational lift_constant(const Rational& c, const Rational&) { return c; }
inline double lift_constant(const Rational& c, double) { return c.to_double(); }
inline Tropical lift_constant(const Rational&, const Tropical&) { return Tropical(0); }
inline LogScaled lift_constant(const Rational& c, const LogScaled& like) {
  return {like.eps() * std::log(c.to_double()), like.eps()};
}

template <class S>
S SfExpr::evaluate(const std::map<std::string, S>& point) const {
  switch (kind()) {
    case Kind::constant: {
      if (point.empty()) return lift_constant(value(), S{});
      return lift_constant(value(), point.begin()->second);
    }
    case Kind::variable: {
      auto it = point.find(name());
      if (it == point.end()) throw std::invalid_argument("no value for variable '" + name() + "'");
      return it->second;
    }
    case Kind::add: return lhs().evaluate(point) + rhs().evaluate(point);
    case Kind::mul: return lhs().evaluate(point) * rhs().evaluate(point);
    case Kind::div: return checked_div(lhs().evaluate(point), rhs().evaluate(point), rhs().str());
  }
  throw std::logic_error("bad expression node");
}

enum class SemiringKind { classical, tropical };

/// Classical evaluation returns a Rational, tropical a Tropical; the other
/// member of the pair is left default.
struct EvalResult {
  SemiringKind kind;
  Rational classical;
  Tropical tropical;
};

EvalResult eval_expr(const SfExpr& e, const std::map<std::string, Rational>& point, SemiringKind kind);

struct ProbeRow {
  double eps;
  double scaled_value;  // eps*log e(exp(X/eps))
  double tropical;
  double error;
};

/// Compares the log-scaled classical value against the max-plus value for each eps.
std::vector<ProbeRow> ultradiscrete_limit_probe(const SfExpr& e,
                                                const std::map<std::string, Rational>& point,
                                                const std::vector<double>& epsilons);

}  // namespace weylp
