#include <doctest.h>

#include "weylp/a2.hpp"
#include "weylp/sampling.hpp"

using namespace weylp;

namespace {

StateA2Mul mul_state(std::array<Rational, 3> a, std::array<Rational, 3> f) { return {a, f, std::nullopt}; }

StateA2Trop trop_state(std::array<long, 3> A, std::array<long, 3> F) {
  StateA2Trop x;
  for (int j = 0; j < 3; ++j) {
    x.a[j] = Tropical(Rational(A[j]));
    x.f[j] = Tropical(Rational(F[j]));
  }
  return x;
}

StateA2Trop random_trop(Sampler& rng) {
  return trop_state({rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)},
                    {rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)});
}

}  // namespace

TEST_CASE("additive s1 and pi") {
  StateA2Add x{{Rational(1), Rational(2), Rational(5)}, {Rational(1), Rational(2), Rational(3)}, std::nullopt};
  auto y = add_apply(GeneratorToken::s(1), x);
  CHECK(y.phi == std::array<Rational, 3>{Rational(0), Rational(2), Rational(4)});
  CHECK(y.alpha == std::array<Rational, 3>{Rational(3), Rational(-2), Rational(7)});
  auto z = add_apply(GeneratorToken::pi(), x);
  CHECK(z.phi == std::array<Rational, 3>{Rational(2), Rational(3), Rational(1)});
}

TEST_CASE("additive reflection with zero root or zero phi") {
  StateA2Add x{{Rational(1), Rational(0), Rational(5)}, {Rational(1), Rational(2), Rational(3)}, std::nullopt};
  auto y = add_apply(GeneratorToken::s(1), x);
  CHECK(y.alpha == x.alpha);
  CHECK(y.phi == x.phi);
  x.phi[1] = Rational(0);
  CHECK(add_apply(GeneratorToken::s(1), x).phi == x.phi);
  x.alpha[1] = Rational(2);
  CHECK_THROWS_AS(add_apply(GeneratorToken::s(1), x), PoleError);
}

TEST_CASE("additive action keeps the root sum") {
  auto r = make_add_realization();
  for (int t = 0; t < 50; ++t) {
    Sampler rng(5, t);
    auto x = r.sample(rng);
    auto y = apply_word(r, parse_word("s0 s1 pi s2 s1"), x);
    CHECK(y.alpha[0] + y.alpha[1] + y.alpha[2] == x.alpha[0] + x.alpha[1] + x.alpha[2]);
  }
}

TEST_CASE("multiplicative s1 example") {
  auto x = mul_state({Rational(1), Rational(4), Rational(1)}, {Rational(1), Rational(2), Rational(3)});
  auto y = mul_apply(GeneratorToken::s(1), x);
  CHECK(y.f == std::array<Rational, 3>{Rational(3, 2), Rational(2), Rational(2)});
  CHECK(y.a == std::array<Rational, 3>{Rational(4), Rational(1, 4), Rational(4)});
}

TEST_CASE("multiplicative action keeps q") {
  auto r = make_mul_realization();
  for (int t = 0; t < 50; ++t) {
    Sampler rng(6, t);
    auto x = r.sample(rng);
    auto y = apply_word(r, parse_word("s2 pi s0 s1 pi^-1"), x);
    CHECK(y.q() == x.q());
  }
}

TEST_CASE("relations of the multiplicative action") {
  CHECK(verify_relations(make_mul_realization(), 50, 3).passed());
}

TEST_CASE("the target-index denominator breaks the involution") {
  auto rep = verify_relations(make_mul_realization(MulDenominator::target), 20, 3);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("qP4 fixed point and worked example") {
  auto fixed = mul_state({Rational(1), Rational(1), Rational(1)}, {Rational(1), Rational(1), Rational(1)});
  CHECK(qp4_forward(fixed).f == fixed.f);

  auto x = mul_state({Rational(1), Rational(1), Rational(2)}, {Rational(1), Rational(1), Rational(1)});
  x.t = Rational(3);
  auto y = qp4_forward(x);
  CHECK(y.f == std::array<Rational, 3>{Rational(5, 3), Rational(3, 2), Rational(8, 5)});
  CHECK(y.f[0] * y.f[1] * y.f[2] == Rational(4));
  CHECK(*y.t == Rational(6));
  CHECK(y.a == x.a);
}

TEST_CASE("qP4 backward inverts forward") {
  auto r = make_mul_realization();
  for (int t = 0; t < 50; ++t) {
    Sampler rng(8, t);
    auto x = r.sample(rng);
    x.t = rng.positive();
    auto fb = qp4_backward(qp4_forward(x));
    auto bf = qp4_forward(qp4_backward(x));
    CHECK(fb.f == x.f);
    CHECK(bf.f == x.f);
    CHECK(*fb.t == *x.t);
    CHECK(qp4_step(x, Direction::forward).f == qp4_forward(x).f);
  }
}

TEST_CASE("qP4 product law f0 f1 f2 -> q^2 f0 f1 f2") {
  auto r = make_mul_realization();
  for (int t = 0; t < 50; ++t) {
    Sampler rng(9, t);
    auto x = r.sample(rng);
    auto y = qp4_forward(x);
    CHECK(y.f[0] * y.f[1] * y.f[2] == x.q() * x.q() * x.f[0] * x.f[1] * x.f[2]);
  }
}

TEST_CASE("tropical examples") {
  auto zero = trop_state({0, 0, 0}, {0, 0, 0});
  CHECK(up4_step(zero).f == zero.f);
  auto x = trop_state({1, 1, 0}, {0, 0, 0});
  auto y = up4_step(x);
  CHECK(y.f == std::array<Tropical, 3>{Tropical(1), Tropical(2), Tropical(1)});
  CHECK(trop_apply(GeneratorToken::s(1), zero).f == zero.f);
}

TEST_CASE("tropical relations and sum law") {
  CHECK(verify_relations(make_trop_realization(), 50, 2).passed());
  for (int t = 0; t < 50; ++t) {
    Sampler rng(10, t);
    auto x = random_trop(rng);
    auto y = up4_step(x);
    CHECK(y.f[0] * y.f[1] * y.f[2] == x.q() * x.q() * x.f[0] * x.f[1] * x.f[2]);
  }
}

TEST_CASE("degeneration of the empty word and pi is exact") {
  StateA2Add x{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {Rational(1), Rational(2), Rational(3)}, std::nullopt};
  for (double eps : {1e-2, 1e-3}) {
    CHECK(degeneration_check(x, eps, {}).max_error() == 0.0);
    CHECK(degeneration_check(x, eps, parse_word("pi")).max_error() == 0.0);
  }
}

TEST_CASE("degeneration error vanishes as eps shrinks") {
  StateA2Add x{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {Rational(1), Rational(2), Rational(3)}, std::nullopt};
  auto coarse = degeneration_check(x, 1e-2, parse_word("s1"));
  auto fine = degeneration_check(x, 1e-3, parse_word("s1"));
  REQUIRE_FALSE(coarse.pole);
  REQUIRE_FALSE(fine.pole);
  CHECK(coarse.max_error() < 1e-2);
  CHECK(coarse.max_error() / fine.max_error() >= 5);
}

TEST_CASE("ultra-discrete consistency") {
  auto x = trop_state({1, 1, 0}, {0, 0, 0});
  auto rows = ud_consistency_check({}, true, x, {1e-3});
  CHECK(rows[0].max_error() <= 1e-2);

  for (int t = 0; t < 20; ++t) {
    Sampler rng(12, t);
    auto z = random_trop(rng);
    auto s1 = ud_consistency_check(parse_word("s1"), false, z, {1e-3});
    CHECK(s1[0].max_error() <= 1e-2);
    for (int j = 0; j < 3; ++j) CHECK(s1[0].error[j] == 0.0);
  }
}

TEST_CASE("degeneration converges at second order") {
  for (int n = 0; n < 5; ++n) {
    Sampler rng(19, n);
    StateA2Add x;
    for (int j = 0; j < 3; ++j) {
      x.alpha[j] = rng.small_positive(10);
      x.phi[j] = rng.small_positive(10);
    }
    for (const char* w : {"s0", "s1 s2", "pi s2 s0", "s1 pi^-1"}) {
      auto coarse = degeneration_check(x, 1e-2, parse_word(w));
      auto fine = degeneration_check(x, 1e-3, parse_word(w));
      if (coarse.pole || fine.pole) continue;
      for (int k = 0; k < 6; ++k) {
        if (coarse.error[k] <= 1e-9) continue;
        CAPTURE(w);
        CHECK(coarse.error[k] / fine.error[k] >= 50);
        CHECK(coarse.error[k] / fine.error[k] <= 200);
      }
    }
  }
}
