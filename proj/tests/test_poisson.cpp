#include <doctest.h>

#include "weylp/poisson.hpp"
#include "weylp/sampling.hpp"

using namespace weylp;

namespace {

MultiPoly random_phase_poly(const RingPtr& ring, Sampler& rng) {
  MultiPoly f(ring);
  for (int k = 0; k < 4; ++k) {
    MultiPoly m = MultiPoly::constant(ring, Rational(rng.uniform(-6, 6), rng.uniform(1, 3)));
    for (std::size_t v = 0; v < ring->size(); ++v) m *= MultiPoly::variable(ring, v).pow(rng.uniform(0, 1));
    if (rng.uniform(0, 1)) m *= MultiPoly::variable(ring, rng.uniform(0, 1));
    f += m;
  }
  return f;
}

}  // namespace

TEST_CASE("bracket examples") {
  auto ring = make_ring({"q", "p", "t"});
  MultiPoly q = MultiPoly::variable(ring, "q"), p = MultiPoly::variable(ring, "p"), t = MultiPoly::variable(ring, "t");
  CHECK(poisson_bracket(p, q) == MultiPoly::constant(ring, Rational(1)));
  CHECK(poisson_bracket(q, p) == MultiPoly::constant(ring, Rational(-1)));
  CHECK(poisson_bracket(p, -p + Rational(2) * q * q + t) == Rational(4) * q);
  CHECK(poisson_bracket(p, q, -1) == MultiPoly::constant(ring, Rational(-1)));
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi and Leibniz") {
  auto ring = make_ring({"q", "p", "t"});
  for (int n = 0; n < 30; ++n) {
    Sampler rng(13, n);
    MultiPoly f = random_phase_poly(ring, rng), g = random_phase_poly(ring, rng), h = random_phase_poly(ring, rng);
    CHECK(poisson_bracket(f, g) == -poisson_bracket(g, f));
    CHECK(poisson_bracket(f, g + h) == poisson_bracket(f, g) + poisson_bracket(f, h));
    MultiPoly jac = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                    poisson_bracket(h, poisson_bracket(f, g));
    CHECK(jac.is_zero());
    CHECK(poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h));
  }
}

TEST_CASE("delta of t is one") {
  for (const auto& tag : PainleveSystem::tags()) {
    auto sys = PainleveSystem::audited(tag);
    CHECK(ratfunc_equal(derivation_delta(sys, RatFunc(sys.var(kVarT))), RatFunc(MultiPoly::constant(sys.ring(), Rational(1)))));
  }
}

TEST_CASE("delta of phi_2 for IV") {
  auto sys = PainleveSystem::audited("IV");
  const auto& phi = sys.phi();
  MultiPoly rhs = Rational(2) * phi[2] * (phi[0] - phi[1]) + sys.var(alpha_var(2));
  CHECK(ratfunc_equal(derivation_delta(sys, RatFunc(phi[2])), RatFunc(rhs)));
}

TEST_CASE("Serre relations hold for every system") {
  for (const auto& tag : PainleveSystem::tags()) {
    CAPTURE(tag);
    CHECK(check_serre(PainleveSystem::audited(tag)).passed());
  }
}

TEST_CASE("II s1 and IV s1 images") {
  auto ii = PainleveSystem::audited("II");
  auto s1 = build_backlund(ii, 1);
  MultiPoly q = ii.var(kVarQ), p = ii.var(kVarP);
  CHECK(ratfunc_equal(s1.images[kVarQ], RatFunc(q * p + ii.var(alpha_var(1)), p)));
  CHECK(ratfunc_equal(s1.images[kVarP], RatFunc(p)));

  auto iv = PainleveSystem::audited("IV");
  auto r1 = build_backlund(iv, 1);
  CHECK(ratfunc_equal(r1.images[kVarQ], RatFunc(iv.var(kVarQ))));
  CHECK_FALSE(ratfunc_equal(r1.images[kVarP], RatFunc(iv.var(kVarP))));
}

TEST_CASE("a zero root gives the identity on q and p") {
  for (const auto& tag : PainleveSystem::tags()) {
    auto sys = PainleveSystem::audited(tag);
    for (int i = 0; i < sys.rank(); ++i) {
      CAPTURE(tag);
      CAPTURE(i);
      auto m = build_backlund(sys, i);
      MultiPoly zero(sys.ring());
      CHECK(ratfunc_equal(m.images[kVarQ].substitute(alpha_var(i), zero), RatFunc(sys.var(kVarQ))));
      CHECK(ratfunc_equal(m.images[kVarP].substitute(alpha_var(i), zero), RatFunc(sys.var(kVarP))));
    }
  }
}

TEST_CASE("exp-ad series terminates within four brackets") {
  for (const auto& tag : PainleveSystem::tags()) {
    auto sys = PainleveSystem::audited(tag);
    for (int i = 0; i < sys.rank(); ++i) CHECK(build_backlund(sys, i).series_depth <= 4);
  }
}

TEST_CASE("reflections act linearly on roots and keep the null root") {
  for (const auto& tag : PainleveSystem::tags()) {
    auto sys = PainleveSystem::audited(tag);
    for (int i = 0; i < sys.rank(); ++i) {
      CAPTURE(tag);
      CAPTURE(i);
      auto m = build_backlund(sys, i);
      RatFunc before(MultiPoly(sys.ring())), after(MultiPoly(sys.ring()));
      for (int j = 0; j < sys.rank(); ++j) {
        MultiPoly expect = sys.var(alpha_var(j)) - Rational(sys.cartan().a(i, j)) * sys.var(alpha_var(i));
        CHECK(ratfunc_equal(m.images[alpha_var(j)], RatFunc(expect)));
        before += RatFunc(sys.marks()[j] * sys.var(alpha_var(j)));
        after += m.images[alpha_var(j)] * RatFunc(MultiPoly::constant(sys.ring(), sys.marks()[j]));
      }
      CHECK(ratfunc_equal(before, after));
    }
  }
}

TEST_CASE("Backlund checks pass under the audited conventions") {
  for (const auto& tag : PainleveSystem::tags()) {
    CAPTURE(tag);
    CHECK(check_backlund(PainleveSystem::audited(tag)).passed());
  }
}

TEST_CASE("symmetric form of IV") {
  auto rep = symmetric_form_check(PainleveSystem::audited("IV"));
  CHECK(rep.passed());
  CHECK(rep.checks.size() == 3);
  CHECK_THROWS_AS(symmetric_form_check(PainleveSystem::audited("II")), std::invalid_argument);
}

TEST_CASE("invariant divisors") {
  for (const auto& tag : PainleveSystem::tags()) {
    auto sys = PainleveSystem::audited(tag);
    for (int j = 0; j < sys.rank(); ++j) {
      CAPTURE(tag);
      CAPTURE(j);
      auto c = invariant_divisor_check(sys, j);
      CHECK(c.status != Status::fail);
      if (tag == "VI" && j == 1) CHECK(c.status == Status::vacuous);
    }
  }
}

TEST_CASE("printed II fails the divisor test") {
  PoissonConvention printed;
  auto sys = PainleveSystem::make("II", printed);
  bool any_fail = false;
  for (int j = 0; j < sys.rank(); ++j) any_fail = any_fail || invariant_divisor_check(sys, j).status == Status::fail;
  CHECK(any_fail);
}

TEST_CASE("convention audit selects exactly one class") {
  for (const auto& tag : PainleveSystem::tags()) {
    CAPTURE(tag);
    auto rep = convention_audit(tag);
    CHECK(rep.passing_classes == 1);
    CHECK(rep.selected == PainleveSystem::audited_convention(tag));
  }
  CHECK(convention_audit("IV").printed_passes);
  CHECK_FALSE(convention_audit("II").printed_passes);
}
