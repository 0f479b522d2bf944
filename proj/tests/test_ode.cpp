#include <doctest.h>

#include <cmath>

#include "weylp/ode.hpp"
#include "weylp/semiring.hpp"

using namespace weylp;

TEST_CASE("barycentric solution t/3") {
  auto tr = integrate(sym_p4({1.0 / 3, 1.0 / 3, 1.0 / 3}), Eigen::Vector3d(1, 1, 1), 3, 4, 0.01);
  REQUIRE_FALSE(tr.truncated);
  CHECK(tr.t.back() == doctest::Approx(4.0));
  for (int j = 0; j < 3; ++j) CHECK(std::abs(tr.final_state()(j) - 4.0 / 3) <= 1e-9);
}

TEST_CASE("the divisor phi_0 = 0 is invariant when alpha_0 = 0") {
  auto tr = integrate(sym_p4({0, 0.4, 0.6}), Eigen::Vector3d(0, 0.3, 1.2), 0, 2, 0.01);
  REQUIRE_FALSE(tr.truncated);
  for (const auto& y : tr.y) CHECK(std::abs(y(0)) <= 1e-10);
}

TEST_CASE("sum of phi drifts linearly") {
  std::array<double, 3> alpha{0.2, 0.5, 0.3};
  auto tr = integrate(sym_p4(alpha), Eigen::Vector3d(0.4, -0.3, 0.7), 0, 1, 0.005);
  REQUIRE_FALSE(tr.truncated);
  CHECK(linear_drift(tr, 1.0) <= 1e-9);
}

TEST_CASE("zero span returns the initial state") {
  auto tr = integrate(sym_p4({1, 0, 0}), Eigen::Vector3d(1, 2, 3), 2, 2, 0.1);
  CHECK(tr.t.size() == 1);
  CHECK(tr.final_state() == Eigen::Vector3d(1, 2, 3));
  CHECK_THROWS_AS(integrate(sym_p4({1, 0, 0}), Eigen::Vector3d(1, 2, 3), 2, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(integrate(sym_p4({1, 0, 0}), Eigen::Vector3d(1, 2, 3), 0, 1, 0), std::invalid_argument);
}

TEST_CASE("step is shrunk to divide the span") {
  auto tr = integrate(sym_p4({1, 0, 0}), Eigen::Vector3d(1, 2, 3), 0, 1, 0.3);
  CHECK(tr.step == doctest::Approx(0.25));
  CHECK(tr.t.size() == 5);
}

TEST_CASE("rk4 is fourth order") {
  auto r = rk4_order_test(0.05);
  CHECK(r.ratio >= 12);
  CHECK(r.ratio <= 20);
}

TEST_CASE("crossing the singular time truncates the trajectory") {
  auto sys = hamiltonian_flow(PainleveSystem::audited("V"), {0.3, 0.2, 0.4, 0.1});
  auto tr = integrate(sys, Eigen::Vector2d(0.5, 0.5), -0.5, 0.5, 0.01);
  CHECK(tr.truncated);
  CHECK_FALSE(tr.diagnostic.empty());
  CHECK(tr.t.back() < 0.5);
  CHECK_THROWS_AS(integrate(sys, Eigen::Vector2d(0.5, 0.5), 0, 1, 0.01), PoleError);
}

TEST_CASE("blow-up truncates the trajectory") {
  auto tr = integrate(sym_p4({0, 0, 0}), Eigen::Vector3d(5, 0, -5), 0, 10, 0.001);
  CHECK(tr.truncated);
}

TEST_CASE("Backlund covariance") {
  std::array<double, 3> alpha{0.3, 0.5, 0.2}, phi{0.9, 1.3, 0.7};
  auto empty = backlund_covariance_test({}, alpha, phi, 0, 1, 0.01);
  CHECK(empty.status == Status::pass);
  CHECK(empty.discrepancy == 0.0);
  CHECK(backlund_covariance_test(parse_word("pi"), alpha, phi, 0, 1, 0.01).status == Status::pass);
  auto s1 = backlund_covariance_test(parse_word("s1 pi s0"), alpha, phi, 0, 1, 0.01);
  CHECK(s1.status == Status::pass);
  CHECK(s1.discrepancy <= 1e-6);
  CHECK(short_words(3).size() == 85);
}

TEST_CASE("H-IV flow agrees with the symmetric form") {
  auto fc = hamiltonian_flow_consistency("IV", 0.4, 0.7, {0.3, 0.5, 0.2}, 0, 1, 0.01);
  CHECK_FALSE(fc.truncated);
  CHECK(fc.discrepancy <= 1e-6);
  CHECK_THROWS_AS(hamiltonian_flow_consistency("II", 0.4, 0.7, {0.3, 0.5, 0.2}, 0, 1, 0.01), std::invalid_argument);
}

TEST_CASE("trajectory output") {
  auto tr = integrate(sym_p4({1.0 / 3, 1.0 / 3, 1.0 / 3}), Eigen::Vector3d(1, 1, 1), 3, 3.5, 0.25);
  auto csv = tr.to_csv();
  CHECK(csv.rfind("t,phi0,phi1,phi2", 0) == 0);
  auto meta = tr.meta_json();
  CHECK(meta["method"] == "rk4");
  CHECK(meta["truncated"] == false);
  auto lines = tr.to_jsonl();
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 3);
}
