#include "weylp/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "weylp/semiring.hpp"

namespace weylp {

PolyRing::PolyRing(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables)
    throw std::invalid_argument("polynomial ring supports at most 12 variables");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable name " + names_[i]);
}

std::size_t PolyRing::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw std::out_of_range("unknown variable '" + std::string(name) + "'");
}

bool PolyRing::has(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const PolyRing>(std::move(names));
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

MultiPoly MultiPoly::constant(RingPtr ring, const Rational& c) {
  MultiPoly p(std::move(ring));
  p.add_term(Monomial{}, c);
  return p;
}

MultiPoly MultiPoly::variable(RingPtr ring, std::string_view name) {
  std::size_t i = ring->index(name);
  return variable(std::move(ring), i);
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->size()) throw std::out_of_range("variable index out of range");
  MultiPoly p(std::move(ring));
  Monomial m{};
  m[index] = 1;
  p.add_term(m, Rational(1));
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::degree(std::size_t var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (auto e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::require_same_ring(const MultiPoly& o) const {
  if (ring_ && o.ring_ && ring_ != o.ring_ && ring_->names() != o.ring_->names())
    throw std::invalid_argument("polynomials over different rings");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_same_ring(o);
  if (!ring_) ring_ = o.ring_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_same_ring(o);
  if (!ring_) ring_ = o.ring_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_same_ring(b);
  MultiPoly r(a.ring_ ? a.ring_ : b.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      for (std::size_t i = 0; i < kMaxVariables; ++i) m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator+(MultiPoly a, const Rational& c) {
  a.add_term(Monomial{}, c);
  return a;
}

MultiPoly operator-(MultiPoly a, const Rational& c) {
  a.add_term(Monomial{}, -c);
  return a;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(ring_, Rational(1));
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(m[var])));
  }
  return r;
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const {
  int deg = degree(var);
  std::vector<MultiPoly> powers;
  powers.reserve(deg + 1);
  powers.push_back(constant(ring_, Rational(1)));
  for (int k = 1; k <= deg; ++k) powers.push_back(powers.back() * value);
  MultiPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[var] = 0;
    MultiPoly t(ring_);
    t.add_term(rest, c);
    r += t * powers[m[var]];
  }
  return r;
}

MultiPoly MultiPoly::divide_by_variable(std::size_t var) const {
  MultiPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) throw std::domain_error("polynomial not divisible by " + ring_->name(var));
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c);
  }
  return r;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (ring_ && point.size() < ring_->size()) throw std::invalid_argument("evaluation point too short");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (m[i] != 0) t *= weylp::pow(point[i], m[i]);
    acc += t;
  }
  return acc;
}

double MultiPoly::evaluate(std::span<const double> point) const {
  if (ring_ && point.size() < ring_->size()) throw std::invalid_argument("evaluation point too short");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.to_double();
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.rbegin(), terms_.rend());
  for (const auto& [m, c] : ordered) {
    bool is_unit_monomial = (m == Monomial{});
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != Rational(1) || is_unit_monomial) {
      os << mag.str();
      wrote = true;
    }
    for (std::size_t i = 0; ring_ && i < ring_->size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << ring_->name(i);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(MultiPoly num) : num_(std::move(num)) {
  den_ = MultiPoly::constant(num_.ring(), Rational(1));
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (!num_.ring()) num_ = MultiPoly(den_.ring());
  simplify_constant_denominator();
}

void RatFunc::simplify_constant_denominator() {
  if (den_.is_constant()) {
    Rational c = den_.constant_term();
    if (c != Rational(1)) {
      num_ *= Rational(1) / c;
      den_ = MultiPoly::constant(num_.ring() ? num_.ring() : den_.ring(), Rational(1));
    }
  }
  if (num_.is_zero() && !den_.is_constant()) den_ = MultiPoly::constant(den_.ring(), Rational(1));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::derivative(std::size_t var) const {
  if (den_.is_constant()) return RatFunc(num_.derivative(var), den_);
  return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatFunc RatFunc::substitute(std::size_t var, const MultiPoly& value) const {
  return RatFunc(num_.substitute(var, value), den_.substitute(var, value));
}

Rational RatFunc::evaluate(std::span<const Rational> point) const {
  Rational d = den_.evaluate(point);
  if (d.is_zero()) throw PoleError(den_.str());
  return num_.evaluate(point) / d;
}

double RatFunc::evaluate(std::span<const double> point) const {
  double d = den_.evaluate(point);
  if (d == 0.0) throw PoleError(den_.str());
  return num_.evaluate(point) / d;
}

std::string RatFunc::str() const {
  if (den_.is_constant() && den_.constant_term() == Rational(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

bool ratfunc_equal(const RatFunc& f, const RatFunc& g) {
  return (f.num() * g.den() - g.num() * f.den()).is_zero();
}

namespace {

struct PowerCache {
  const MultiPoly* base;
  std::vector<MultiPoly> powers;
  const MultiPoly& get(int k) {
    while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * *base);
    return powers[k];
  }
};

// Numerator of f∘images over the common denominator prod den_v^maxdeg[v].
MultiPoly compose_numerator(const MultiPoly& f, std::span<const RatFunc> images,
                            const std::vector<int>& maxdeg, std::vector<PowerCache>& nums,
                            std::vector<PowerCache>& dens, const RingPtr& out) {
  MultiPoly acc(out);
  for (const auto& [m, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(out, c);
    for (std::size_t v = 0; v < images.size(); ++v) {
      if (m[v] > 0) t *= nums[v].get(m[v]);
      int rest = maxdeg[v] - m[v];
      if (rest > 0 && !images[v].is_polynomial()) t *= dens[v].get(rest);
    }
    acc += t;
  }
  return acc;
}

}  // namespace

static RatFunc compose_impl(const MultiPoly& num, const MultiPoly* den, std::span<const RatFunc> images) {
  if (images.empty()) throw std::invalid_argument("compose with no images");
  RingPtr out = images[0].ring();
  const std::size_t n = images.size();
  std::vector<int> maxdeg(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    maxdeg[v] = num.degree(v);
    if (den) maxdeg[v] = std::max(maxdeg[v], den->degree(v));
  }
  std::vector<PowerCache> nums, dens;
  nums.reserve(n);
  dens.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    nums.push_back({&images[v].num(), {MultiPoly::constant(out, Rational(1))}});
    dens.push_back({&images[v].den(), {MultiPoly::constant(out, Rational(1))}});
  }
  MultiPoly top = compose_numerator(num, images, maxdeg, nums, dens, out);
  if (den) {
    MultiPoly bottom = compose_numerator(*den, images, maxdeg, nums, dens, out);
    if (bottom.is_zero()) throw PoleError("composition denominator vanishes identically");
    return RatFunc(std::move(top), std::move(bottom));
  }
  MultiPoly bottom = MultiPoly::constant(out, Rational(1));
  for (std::size_t v = 0; v < n; ++v)
    if (maxdeg[v] > 0 && !images[v].is_polynomial()) bottom *= dens[v].get(maxdeg[v]);
  return RatFunc(std::move(top), std::move(bottom));
}

RatFunc compose(const MultiPoly& f, std::span<const RatFunc> images) {
  return compose_impl(f, nullptr, images);
}

RatFunc compose(const RatFunc& f, std::span<const RatFunc> images) {
  return compose_impl(f.num(), &f.den(), images);
}

}  // namespace weylp
