#include <doctest.h>

#include <cmath>

#include "weylp/polynomial.hpp"
#include "weylp/rational.hpp"
#include "weylp/sampling.hpp"
#include "weylp/semiring.hpp"
#include "weylp/sfexpr.hpp"

using namespace weylp;

namespace {

MultiPoly random_poly(const RingPtr& ring, Sampler& rng, int terms, int max_deg) {
  MultiPoly f(ring);
  for (int k = 0; k < terms; ++k) {
    MultiPoly m = MultiPoly::constant(ring, Rational(rng.uniform(-9, 9), rng.uniform(1, 5)));
    for (std::size_t v = 0; v < ring->size(); ++v) m *= MultiPoly::variable(ring, v).pow(rng.uniform(0, max_deg));
    f += m;
  }
  return f;
}

Tropical trop(long n) { return Tropical(Rational(n)); }

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(rat_arith(Rational(1, 2), Rational(1, 3), ArithOp::add) == Rational(5, 6));
  CHECK(rat_arith(Rational(5, 3), Rational(3, 2), ArithOp::mul) == Rational(5, 2));
  CHECK_THROWS_AS(rat_arith(Rational(1), Rational(0), ArithOp::div), DivisionByZero);
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational(4, 6).denominator() == 3);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse(" -0.125 ") == Rational(-1, 8));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("ratfunc_equal by cross multiplication") {
  auto ring = make_ring({"x", "y"});
  MultiPoly x = MultiPoly::variable(ring, "x"), y = MultiPoly::variable(ring, "y");
  MultiPoly one = MultiPoly::constant(ring, Rational(1));
  CHECK(ratfunc_equal(RatFunc(x * x - one, x - one), RatFunc(x + one)));
  CHECK_FALSE(ratfunc_equal(RatFunc(x), RatFunc(x + one)));
  CHECK(ratfunc_equal(RatFunc(x * y + x, y + one), RatFunc(x)));
}

TEST_CASE("f*g/g equals f for random polynomials") {
  auto ring = make_ring({"a", "b", "c"});
  for (int t = 0; t < 30; ++t) {
    Sampler rng(11, t);
    MultiPoly f = random_poly(ring, rng, 4, 3), g = random_poly(ring, rng, 3, 2);
    if (g.is_zero()) continue;
    CHECK(ratfunc_equal(RatFunc(f) * RatFunc(g) / RatFunc(g), RatFunc(f)));
  }
}

TEST_CASE("polynomial derivative and substitution") {
  auto ring = make_ring({"q", "p"});
  MultiPoly q = MultiPoly::variable(ring, "q"), p = MultiPoly::variable(ring, "p");
  MultiPoly f = q * q * p + Rational(3) * p;
  CHECK(f.derivative(0) == Rational(2) * q * p);
  CHECK(f.derivative(1) == q * q + MultiPoly::constant(ring, Rational(3)));
  CHECK(f.substitute(0, p) == p * p * p + Rational(3) * p);
  std::vector<Rational> pt{Rational(2), Rational(1, 3)};
  CHECK(f.evaluate(std::span<const Rational>(pt)) == Rational(7, 3));
}

TEST_CASE("eval_expr classical and tropical") {
  auto e = SfExpr::parse("a*b + c");
  std::map<std::string, Rational> pt{{"a", Rational(2)}, {"b", Rational(3)}, {"c", Rational(4)}};
  CHECK(eval_expr(e, pt, SemiringKind::classical).classical == Rational(10));
  std::map<std::string, Rational> tp{{"a", Rational(1)}, {"b", Rational(2)}, {"c", Rational(4)}};
  CHECK(eval_expr(e, tp, SemiringKind::tropical).tropical == trop(4));
  auto f = SfExpr::parse("(a+b)/a");
  CHECK(eval_expr(f, {{"a", Rational(0)}, {"b", Rational(5)}}, SemiringKind::tropical).tropical == trop(5));
}

TEST_CASE("subtraction is rejected by the parser") {
  CHECK_THROWS_AS(SfExpr::parse("a - b"), std::invalid_argument);
  CHECK_NOTHROW(SfExpr::parse("2*x^3 + y"));
}

TEST_CASE("classical evaluation at positive points never errors") {
  auto e = SfExpr::parse("(a*b + c)/(a + 2*b*c) + a^2/(b+c)");
  for (int t = 0; t < 100; ++t) {
    Sampler rng(3, t);
    std::map<std::string, Rational> pt{{"a", rng.positive()}, {"b", rng.positive()}, {"c", rng.positive()}};
    auto r = eval_expr(e, pt, SemiringKind::classical);
    CHECK(r.classical.sign() > 0);
  }
}

TEST_CASE("classical zero denominator names the subexpression") {
  auto e = SfExpr::parse("a/b");
  try {
    eval_expr(e, {{"a", Rational(1)}, {"b", Rational(0)}}, SemiringKind::classical);
    FAIL("expected a pole");
  } catch (const PoleError& err) {
    CHECK(err.where() == "b");
  }
}

TEST_CASE("ultradiscrete limit probe examples") {
  auto sum = SfExpr::parse("a+b");
  auto rows = ultradiscrete_limit_probe(sum, {{"a", Rational(0)}, {"b", Rational(1)}}, {1e-2});
  CHECK(std::abs(rows[0].scaled_value - 1) <= 1e-2);

  auto prod = SfExpr::parse("a*b");
  for (const auto& r : ultradiscrete_limit_probe(prod, {{"a", Rational(3, 2)}, {"b", Rational(-7)}}, {0.1, 1e-2, 1e-3}))
    CHECK(r.error == 0.0);

  auto twice = SfExpr::parse("a+a");
  auto tw = ultradiscrete_limit_probe(twice, {{"a", Rational(0)}}, {1e-3});
  CHECK(tw[0].error == doctest::Approx(1e-3 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("log-scaled evaluation does not overflow") {
  auto e = SfExpr::parse("(a+b)/(1+a*b)");
  auto rows = ultradiscrete_limit_probe(e, {{"a", Rational(100)}, {"b", Rational(-100)}}, {1e-4});
  CHECK(std::isfinite(rows[0].scaled_value));
  CHECK(rows[0].error < 1e-3);
}

TEST_CASE("probe error shrinks at least 5x per decade") {
  const char* exprs[] = {"a+b", "(a+b)/(1+a*b)", "a*b+c+2*a", "(a+a)/b", "(a*c+b)/(a+c)"};
  for (int t = 0; t < 20; ++t) {
    Sampler rng(9, t);
    std::map<std::string, Rational> pt{{"a", Rational(rng.uniform(-5, 5))},
                                       {"b", Rational(rng.uniform(-5, 5))},
                                       {"c", Rational(rng.uniform(-5, 5))}};
    for (const char* s : exprs) {
      auto rows = ultradiscrete_limit_probe(SfExpr::parse(s), pt, {1e-1, 1e-2, 1e-3});
      for (int k = 0; k + 1 < 3; ++k) {
        if (rows[k].error < 1e-12) continue;
        CHECK(rows[k].error / std::max(rows[k + 1].error, 1e-300) >= 5);
      }
    }
  }
}

TEST_CASE("tropical semiring laws on random triples") {
  for (int t = 0; t < 200; ++t) {
    Sampler rng(21, t);
    auto r = [&] { return Tropical(Rational(rng.uniform(-50, 50), rng.uniform(1, 7))); };
    Tropical a = r(), b = r(), c = r();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + Tropical::neg_inf() == a);
    CHECK((a * Tropical::neg_inf()).is_neg_inf());
    CHECK(a * Tropical(0) == a);
  }
}
