#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weylp/rational.hpp"

namespace weylp {

/// Ordered variable names shared by every polynomial built over it.
class PolyRing {
 public:
  explicit PolyRing(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of `name`; throws std::out_of_range when absent.
  std::size_t index(std::string_view name) const;
  bool has(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const PolyRing>;
RingPtr make_ring(std::vector<std::string> names);

inline constexpr std::size_t kMaxVariables = 12;
using Monomial = std::array<std::uint16_t, kMaxVariables>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring);

  static MultiPoly constant(RingPtr ring, const Rational& c);
  static MultiPoly variable(RingPtr ring, std::string_view name);
  static MultiPoly variable(RingPtr ring, std::size_t index);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int degree(std::size_t var) const;
  int total_degree() const;
  bool depends_on(std::size_t var) const { return degree(var) > 0; }

  void add_term(const Monomial& m, const Rational& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator+(MultiPoly a, const Rational& c);
  friend MultiPoly operator-(MultiPoly a, const Rational& c);
  friend MultiPoly operator+(const Rational& c, MultiPoly a) { return std::move(a) + c; }
  friend MultiPoly operator-(const Rational& c, const MultiPoly& a) { return -a + c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned n) const;
  MultiPoly derivative(std::size_t var) const;
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const;
  /// Exact quotient by the variable; throws if some term lacks it.
  MultiPoly divide_by_variable(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  std::string str() const;

 private:
  void require_same_ring(const MultiPoly& o) const;

  RingPtr ring_;
  TermMap terms_;
};

/// Quotient of two polynomials; equality is by cross-multiplication, no gcd.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(MultiPoly num);  // NOLINT(google-explicit-constructor)
  RatFunc(MultiPoly num, MultiPoly den);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc derivative(std::size_t var) const;
  RatFunc substitute(std::size_t var, const MultiPoly& value) const;

  /// Throws PoleError naming the denominator when it vanishes.
  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  std::string str() const;

 private:
  void simplify_constant_denominator();

  MultiPoly num_;
  MultiPoly den_;
};

/// True iff f.num*g.den - g.num*f.den is the zero polynomial.
bool ratfunc_equal(const RatFunc& f, const RatFunc& g);

/// Substitutes images[v] for every variable v of `f`'s ring.
RatFunc compose(const MultiPoly& f, std::span<const RatFunc> images);
RatFunc compose(const RatFunc& f, std::span<const RatFunc> images);

}  // namespace weylp
