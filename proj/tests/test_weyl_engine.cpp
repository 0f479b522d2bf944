#include <doctest.h>

#include <algorithm>

#include "weylp/a2.hpp"
#include "weylp/cartan.hpp"
#include "weylp/realization.hpp"
#include "weylp/word.hpp"

using namespace weylp;

namespace {

// Simple-root coordinates of affine A1; s_i(alpha_j) = alpha_j - alpha_i a_ij.
struct RootPair {
  Rational a0, a1;
};

Realization<RootPair> a1_roots() {
  Realization<RootPair> r;
  r.name = "A1 roots";
  r.families.push_back({Family::s, CartanData::affine_A(1), std::nullopt});
  r.apply = [c = CartanData::affine_A(1)](const GeneratorToken& g, const RootPair& x) {
    Rational v[2] = {x.a0, x.a1};
    const int i = ((g.index % 2) + 2) % 2;
    Rational ai = v[i];
    for (int j = 0; j < 2; ++j) v[j] -= ai * Rational(c.a(i, j));
    return RootPair{v[0], v[1]};
  };
  r.sample = [](Sampler& rng) { return RootPair{rng.positive(), rng.positive()}; };
  r.differ = [](const RootPair& x, const RootPair& y) -> std::optional<std::string> {
    if (x.a0 != y.a0) return "alpha_0";
    if (x.a1 != y.a1) return "alpha_1";
    return std::nullopt;
  };
  r.to_json = [](const RootPair& x) { return Json{{"alpha", {x.a0.str(), x.a1.str()}}}; };
  return r;
}

}  // namespace

TEST_CASE("cartan validation and coxeter numbers") {
  auto a2 = CartanData::affine_A(2);
  CHECK_NOTHROW(a2.validate());
  CHECK(a2.coxeter(0, 1) == 3);
  CHECK(a2.coxeter(1, 1) == 1);
  auto a1 = CartanData::affine_A(1);
  CHECK(a1.coxeter(0, 1) == CartanData::kInfinite);
  auto d4 = CartanData::affine_D4();
  CHECK(d4.coxeter(0, 2) == 3);
  CHECK(d4.coxeter(0, 1) == 2);
  CHECK(CartanData::affine_A(3).coxeter(0, 2) == 2);

  auto bad = a2;
  bad.a(0, 1) = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = a2;
  bad.a(0, 1) = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = a2;
  bad.u(0, 1) = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = a2;
  bad.rotation = {0, 0, 1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(CartanData::affine_A(0), std::invalid_argument);
}

TEST_CASE("word parsing and formatting") {
  auto w = parse_word("s1 pi^-1, w s0 r2 omega^-1");
  REQUIRE(w.size() == 6);
  CHECK(w[0] == GeneratorToken::s(1));
  CHECK(w[1] == GeneratorToken::pi(true));
  CHECK(w[2] == GeneratorToken::omega());
  CHECK(w[4] == GeneratorToken::r(2));
  CHECK(parse_word(format_word(w)) == w);
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("s1 x2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("s"), std::invalid_argument);
  auto inv = inverse_word(parse_word("s0 pi s1"));
  CHECK(inv == parse_word("s1 pi^-1 s0"));
  CHECK(power(parse_word("s0 s1"), 3).size() == 6);
}

TEST_CASE("additive action: s1 s1 is the identity and pi^3 fixes alpha") {
  auto r = make_add_realization();
  StateA2Add x{{Rational(1), Rational(2), Rational(3)}, {Rational(5), Rational(7, 2), Rational(1, 9)}, std::nullopt};
  auto y = apply_word(r, parse_word("s1 s1"), x);
  CHECK_FALSE(r.differ(x, y));
  auto z = apply_word(r, parse_word("pi pi pi"), x);
  CHECK_FALSE(r.differ(x, z));
  auto once = apply_word(r, parse_word("pi"), x);
  CHECK(once.alpha[0] == Rational(2));
  CHECK(once.alpha[2] == Rational(1));
}

TEST_CASE("word action is functorial") {
  auto r = make_mul_realization();
  Sampler rng(4, 0);
  for (int t = 0; t < 20; ++t) {
    auto x = r.sample(rng);
    auto u = parse_word("s0 pi s2"), v = parse_word("s1 pi^-1 s0");
    auto lhs = apply_word(r, concat(u, v), x);
    auto rhs = apply_word(r, v, apply_word(r, u, x));
    CHECK_FALSE(r.differ(lhs, rhs));
    CHECK_FALSE(r.differ(apply_word(r, concat(u, inverse_word(u)), x), x));
  }
}

TEST_CASE("all implied relations hold for the additive action") {
  auto rep = verify_relations(make_add_realization(), 30, 7);
  CHECK(rep.passed());
  CHECK(rep.count(Status::pass) == static_cast<int>(rep.checks.size()));
}

TEST_CASE("a corrupted orientation breaks a braid relation") {
  auto c = CartanData::affine_A(2);
  c.u(0, 1) = -1;
  auto rep = verify_relations(make_add_realization(c), 10, 3);
  CHECK_FALSE(rep.passed());
  bool braid_failed = false;
  for (const auto& ch : rep.checks)
    if (ch.status == Status::fail && ch.relation == "(s0 s1)^3") {
      braid_failed = true;
      CHECK_FALSE(ch.failures.front().witness.is_null());
    }
  CHECK(braid_failed);
}

TEST_CASE("reversing one edge keeps the braids but not the rotation") {
  auto c = CartanData::affine_A(2);
  c.u(0, 1) = -1;
  c.u(1, 0) = 1;
  auto rep = verify_relations(make_add_realization(c), 10, 3);
  for (const auto& ch : rep.checks) {
    CAPTURE(ch.relation);
    CHECK((ch.status == Status::fail) == (ch.relation.rfind("pi", 0) == 0));
  }
}

TEST_CASE("A1 gets an infinite-order check and no braid") {
  auto r = a1_roots();
  auto rels = implied_relations(r);
  CHECK(rels.size() == 2);
  auto rep = verify_relations(r, 5, 1);
  CHECK(rep.passed());
  CHECK(std::any_of(rep.checks.begin(), rep.checks.end(),
                    [](const CheckResult& c) { return c.relation.find("!= 1") != std::string::npos; }));
}

TEST_CASE("translation words") {
  auto g2 = translation_words(2, Family::r, Family::omega, GammaReading::top_is_last);
  CHECK(format_word(g2[0]) == "w r1");
  CHECK(format_word(g2[1]) == "r1 w");
  auto g3 = translation_words(3, Family::r, Family::omega, GammaReading::top_is_last);
  CHECK(format_word(g3[0]) == "w r2 r1");
  CHECK(format_word(g3[1]) == "r1 w r2");
  CHECK(format_word(g3[2]) == "r2 r1 w");
  auto z3 = translation_words(3, Family::r, Family::omega, GammaReading::top_is_zero);
  CHECK(format_word(z3[0]) == "w r0 r2 r1");
  CHECK_THROWS_AS(translation_words(1, Family::r, Family::omega, GammaReading::top_is_last), std::invalid_argument);
}

TEST_CASE("verify_commuting_flows") {
  auto r = make_add_realization();
  auto noncommuting = verify_commuting_flows(r, {parse_word("s0"), parse_word("s1")}, 10, 2);
  CHECK_FALSE(noncommuting.passed());
  auto single = verify_commuting_flows(r, {parse_word("s0")}, 10, 2);
  REQUIRE(single.checks.size() == 1);
  CHECK(single.checks[0].status == Status::vacuous);
  CHECK_THROWS_AS(verify_commuting_flows(r, {}, 10, 2), std::invalid_argument);
}

TEST_CASE("rotation order probe") {
  CHECK(rotation_order_probe(make_add_realization(), GeneratorToken::pi(), 6, 1) == 3);
  CHECK(rotation_order_probe(make_mul_realization(), GeneratorToken::pi(true), 6, 1) == 3);
  CHECK(rotation_order_probe(make_add_realization(), GeneratorToken::s(0), 6, 1) == 2);
}

TEST_CASE("check results settle and serialize") {
  CheckResult c;
  c.relation = "x";
  c.failures.push_back({Json{{"a", 1}}, "a"});
  c.settle();
  CHECK(c.status == Status::fail);
  auto j = c.to_json();
  CHECK(j["status"] == "fail");
  CHECK(to_string(Status::inconclusive) == "inconclusive");
}
