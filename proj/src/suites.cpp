#include "weylp/suites.hpp"

#include <chrono>
#include <cmath>
#include <regex>

#include "weylp/a2.hpp"
#include "weylp/lattice.hpp"
#include "weylp/ode.hpp"
#include "weylp/poisson.hpp"

namespace weylp {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

const WeylWord& a2_generators() {
  static const WeylWord g = parse_word("s0 s1 s2 pi");
  return g;
}

template <class State>
std::optional<Failure> compare(const Realization<State>& r, const State& x, const State& a, const State& b) {
  if (auto c = r.differ(a, b)) return Failure{r.to_json(x), *c};
  return std::nullopt;
}

QPSystemState sample_qp(const Realization<LatticeState>& r, Sampler& rng) {
  QPSystemState st{r.sample(rng), {}};
  for (int k = 0; k < st.x.M; ++k) st.t.push_back(rng.small_positive(30));
  return st;
}

std::optional<Failure> compare_qp(const Realization<LatticeState>& r, const QPSystemState& x, const QPSystemState& a,
                                  const QPSystemState& b) {
  if (auto c = r.differ(a.x, b.x)) return Failure{r.to_json(x.x), *c};
  for (std::size_t k = 0; k < a.t.size(); ++k)
    if (a.t[k] != b.t[k]) return Failure{r.to_json(x.x), "t_" + std::to_string(k + 1)};
  return std::nullopt;
}

}  // namespace

CheckResult check_fact(const std::string& realization, const std::string& relation, bool ok, const std::string& note,
                       Json witness) {
  CheckResult c;
  c.realization = realization;
  c.relation = relation;
  c.trials = 1;
  c.note = note;
  if (!ok) c.failures.push_back({std::move(witness), ""});
  c.settle();
  return c;
}

VerificationReport a2_add_suite(int trials, std::uint64_t seed) {
  return verify_relations(make_add_realization(), trials, seed);
}

VerificationReport a2_mul_suite(int trials, std::uint64_t seed) {
  const auto r = make_mul_realization();
  VerificationReport rep = verify_relations(r, trials, seed);
  std::uint64_t stream = 100;
  for (const auto& g : a2_generators())
    rep.add(check_property(r.name, "T " + g.str() + " = " + g.str() + " T", trials, seed, stream++, [&](Sampler& rng) {
      auto x = r.sample(rng);
      return compare(r, x, qp4_forward(mul_apply(g, x)), mul_apply(g, qp4_forward(x)));
    }));
  rep.add(check_property(r.name, "T(f0 f1 f2) = q^2 f0 f1 f2", trials, seed, stream++,
                         [&](Sampler& rng) -> std::optional<Failure> {
                           auto x = r.sample(rng);
                           auto y = qp4_forward(x);
                           if (y.f[0] * y.f[1] * y.f[2] != x.q() * x.q() * x.f[0] * x.f[1] * x.f[2])
                             return Failure{r.to_json(x), "f0 f1 f2"};
                           return std::nullopt;
                         }));
  rep.add(check_property(r.name, "T^-1 T = 1", trials, seed, stream++, [&](Sampler& rng) {
    auto x = r.sample(rng);
    return compare(r, x, qp4_backward(qp4_forward(x)), x);
  }));
  rep.add(check_property(r.name, "T T^-1 = 1", trials, seed, stream++, [&](Sampler& rng) {
    auto x = r.sample(rng);
    return compare(r, x, qp4_forward(qp4_backward(x)), x);
  }));
  StateA2Mul ex;
  ex.a = {Rational(1), Rational(1), Rational(2)};
  ex.f = {Rational(1), Rational(1), Rational(1)};
  auto y = qp4_forward(ex);
  const bool ok = y.f[0] == Rational(5, 3) && y.f[1] == Rational(3, 2) && y.f[2] == Rational(8, 5);
  rep.add(check_fact(r.name, "T at a=(1,1,2), f=(1,1,1) gives f=(5/3,3/2,8/5)", ok, "", state_to_json(y)));
  return rep;
}

VerificationReport a2_trop_suite(int trials, std::uint64_t seed) {
  const auto r = make_trop_realization();
  VerificationReport rep = verify_relations(r, trials, seed);
  std::uint64_t stream = 200;
  for (const auto& g : a2_generators())
    rep.add(check_property(r.name, "T " + g.str() + " = " + g.str() + " T", trials, seed, stream++, [&](Sampler& rng) {
      auto x = r.sample(rng);
      return compare(r, x, up4_step(trop_apply(g, x)), trop_apply(g, up4_step(x)));
    }));
  rep.add(check_property(r.name, "T(F0+F1+F2) = F0+F1+F2 + 2Q", trials, seed, stream++,
                         [&](Sampler& rng) -> std::optional<Failure> {
                           auto x = r.sample(rng);
                           auto y = up4_step(x);
                           if (!(y.f[0] * y.f[1] * y.f[2] == x.q() * x.q() * x.f[0] * x.f[1] * x.f[2]))
                             return Failure{r.to_json(x), "F0+F1+F2"};
                           return std::nullopt;
                         }));
  StateA2Trop ex;
  ex.a = {Tropical(1), Tropical(1), Tropical(0)};
  ex.f = {Tropical(0), Tropical(0), Tropical(0)};
  auto y = up4_step(ex);
  const bool ok = y.f[0] == Tropical(1) && y.f[1] == Tropical(2) && y.f[2] == Tropical(1);
  rep.add(check_fact(r.name, "T at A=(1,1,0), F=0 gives F=(1,2,1)", ok, "", state_to_json(y)));
  return rep;
}

VerificationReport poisson_suite(const std::string& tag, std::uint64_t seed) {
  const auto sys = PainleveSystem::audited(tag);
  VerificationReport rep;
  rep.name = "poisson:" + tag;
  rep.merge(check_serre(sys));
  rep.merge(check_backlund(sys, seed));
  if (tag == "IV") rep.merge(symmetric_form_check(sys));
  for (int j = 0; j < sys.rank(); ++j) rep.add(invariant_divisor_check(sys, j));
  try {
    auto audit = convention_audit(tag, seed);
    rep.add(check_fact("H_" + tag, "convention audit selects one class", audit.selected == sys.convention(),
                       "selected " + audit.selected.str() + "; " + audit.diff));
  } catch (const std::runtime_error& e) {
    rep.add(check_fact("H_" + tag, "convention audit selects one class", false, e.what()));
  }
  return rep;
}

VerificationReport lattice_suite(int M, int N, int trials, std::uint64_t seed) {
  const auto r = make_lattice_realization(M, N);
  const auto ru = make_lattice_realization(M, N, {PQForm::corrected, true});
  VerificationReport rep;
  rep.name = r.name;
  rep.merge(verify_relations(r, trials, seed));

  const auto gam = lattice_gammas(M);
  rep.merge(verify_commuting_flows(r, gam, trials, seed));
  std::uint64_t stream = 300;
  for (int k = 1; k < M; ++k) {
    Relation rel{"w gamma_" + std::to_string(k) + " w^-1 = gamma_" + std::to_string(k + 1),
                 concat(concat(parse_word("w"), gam[k - 1]), parse_word("w^-1")), gam[k]};
    rep.add(check_relation(r, rel, trials, seed, stream++));
  }

  for (int k = 1; k <= M; ++k) {
    WeylWord gens;
    for (int l = 0; l < N; ++l) gens.push_back({Family::s, l, false});
    gens.push_back({Family::pi, 0, false});
    for (const auto& g : gens)
      rep.add(check_property(ru.name, "T_" + std::to_string(k) + " " + g.str() + " = " + g.str() + " T_" +
                                          std::to_string(k),
                             trials, seed, stream++, [&](Sampler& rng) {
                               auto st = sample_qp(ru, rng);
                               QPSystemState a = st;
                               a.x = lattice_apply(g, st.x);
                               a = qpainleve_step(a, k);
                               QPSystemState b = qpainleve_step(st, k);
                               b.x = lattice_apply(g, b.x);
                               return compare_qp(ru, st, a, b);
                             }));
    for (int n = k + 1; n <= M; ++n)
      rep.add(check_property(ru.name, "T_" + std::to_string(k) + " T_" + std::to_string(n) + " = T_" +
                                          std::to_string(n) + " T_" + std::to_string(k),
                             trials, seed, stream++, [&](Sampler& rng) {
                               auto st = sample_qp(ru, rng);
                               return compare_qp(ru, st, qpainleve_step(qpainleve_step(st, n), k),
                                                 qpainleve_step(qpainleve_step(st, k), n));
                             }));
  }

  for (int k = 0; k < M; ++k)
    rep.add(check_property(r.name, "r" + std::to_string(k) + " keeps x^i_j x^{i+1}_j", trials, seed, stream++,
                           [&](Sampler& rng) -> std::optional<Failure> {
                             auto st = r.sample(rng);
                             auto y = lattice_apply(GeneratorToken{Family::r, k, false}, st);
                             const int i = k == 0 ? M : k;
                             for (int j = 1; j <= N; ++j)
                               if (y.at(i, j) * y.at(i + 1, j) != st.at(i, j) * st.at(i + 1, j))
                                 return Failure{r.to_json(st), "column " + std::to_string(j)};
                             return std::nullopt;
                           }));
  for (int l = 0; l < N; ++l)
    rep.add(check_property(r.name, "s" + std::to_string(l) + " keeps x^i_j x^i_{j+1}", trials, seed, stream++,
                           [&](Sampler& rng) -> std::optional<Failure> {
                             auto st = r.sample(rng);
                             auto y = lattice_apply(GeneratorToken{Family::s, l, false}, st);
                             const int j = l == 0 ? N : l;
                             for (int i = 1; i <= M; ++i)
                               if (y.at(i, j) * y.at(i, j + 1) != st.at(i, j) * st.at(i, j + 1))
                                 return Failure{r.to_json(st), "row " + std::to_string(i)};
                             return std::nullopt;
                           }));

  const auto rt = make_trop_lattice_realization(M, N);
  rep.merge(verify_relations(rt, trials, seed));
  for (int k = 0; k < M; ++k)
    rep.add(check_property(rt.name, "r" + std::to_string(k) + " keeps X^i_j + X^{i+1}_j", trials, seed, stream++,
                           [&](Sampler& rng) -> std::optional<Failure> {
                             auto st = rt.sample(rng);
                             auto y = lattice_apply(GeneratorToken{Family::r, k, false}, st);
                             const int i = k == 0 ? M : k;
                             for (int j = 1; j <= N; ++j)
                               if (!(y.at(i, j) * y.at(i + 1, j) == st.at(i, j) * st.at(i + 1, j)))
                                 return Failure{rt.to_json(st), "column " + std::to_string(j)};
                             return std::nullopt;
                           }));

  const int zs_trials = std::min(trials, 10);
  const std::vector<Rational> zs{Rational(2), Rational(3, 7), Rational(5)};
  for (int which = 0; which < 2; ++which) {
    const std::string label = which == 0 ? "T_n(B_m) B_n = T_m(B_n) B_m" : "T_1 ... T_M (u) = u";
    rep.add(check_property(ru.name, label, zs_trials, seed, stream++, [&](Sampler& rng) -> std::optional<Failure> {
      auto st = sample_qp(ru, rng);
      const auto& c = zs_oracle(st, zs).checks[which];
      if (c.status == Status::fail) return Failure{ru.to_json(st.x), c.failures.front().coordinate};
      return std::nullopt;
    }));
  }
  return rep;
}

VerificationReport ode_suite() {
  VerificationReport rep;
  rep.name = "ode";
  const std::string sp = "sym-p4";

  auto bary = integrate(sym_p4({1.0 / 3, 1.0 / 3, 1.0 / 3}), Eigen::Vector3d(1, 1, 1), 3, 4, 1e-3);
  const double bary_err = (bary.final_state().array() - 4.0 / 3).abs().maxCoeff();
  rep.add(check_fact(sp, "phi_j = t/3 tracked over [3,4] to 1e-9", !bary.truncated && bary_err <= 1e-9,
                     "error " + num(bary_err)));
  const double drift = linear_drift(bary, 1.0);
  rep.add(check_fact(sp, "sum(phi) - k t drift <= 1e-9", drift <= 1e-9, "drift " + num(drift)));

  auto div = integrate(sym_p4({0, 0.5, 0.5}), Eigen::Vector3d(0, 1, 2), 0, 1, 1e-3);
  double div_max = 0;
  for (const auto& y : div.y) div_max = std::max(div_max, std::abs(y(0)));
  rep.add(check_fact(sp, "alpha_0 = 0, phi_0(0) = 0 keeps |phi_0| <= 1e-10", !div.truncated && div_max <= 1e-10,
                     "max " + num(div_max)));

  struct Start {
    std::array<double, 3> alpha, phi;
    double t0, t1;
  };
  const std::vector<Start> starts{{{1.0 / 3, 1.0 / 3, 1.0 / 3}, {1, 1, 1}, 3, 4}, {{0.3, 0.5, 0.2}, {1, 1.2, 0.9}, 0, 0.5}};
  for (const auto& s : starts) {
    CheckResult c;
    c.realization = sp;
    c.relation = "Backlund covariance, words of length <= 3";
    double worst = 0;
    int inconclusive = 0;
    for (const auto& res : backlund_covariance_sweep(s.alpha, s.phi, s.t0, s.t1, 1e-3)) {
      ++c.trials;
      worst = std::max(worst, res.discrepancy);
      if (res.status == Status::fail) c.failures.push_back({res.to_json(), res.word});
      if (res.status == Status::inconclusive) ++inconclusive;
    }
    c.note = "start phi=(" + num(s.phi[0]) + "," + num(s.phi[1]) + "," + num(s.phi[2]) + ") max discrepancy " +
             num(worst) + ", inconclusive " + std::to_string(inconclusive);
    c.settle();
    rep.add(c);
  }

  auto order = rk4_order_test(0.1);
  rep.add(check_fact(sp, "RK4 order ratio in [12,20]", order.ratio >= 12 && order.ratio <= 20,
                     "ratio " + num(order.ratio)));

  auto fc = hamiltonian_flow_consistency("IV", 1, 1, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 0, 0.5, 1e-3);
  rep.add(check_fact("H_IV", "H_IV flow matches the symmetric form to 1e-6", !fc.truncated && fc.discrepancy <= 1e-6,
                     "discrepancy " + num(fc.discrepancy)));
  auto fz = hamiltonian_flow_consistency("IV", 1, 1, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 0, 0, 1e-3);
  rep.add(check_fact("H_IV", "zero time span agrees exactly", fz.discrepancy == 0, ""));
  return rep;
}

std::vector<std::string> all_selectors() {
  return {"a2-add",  "a2-mul", "a2-trop", "poisson:II", "poisson:IV", "poisson:V", "poisson:VI",
          "mn:2x2", "mn:2x3", "mn:3x2",  "mn:3x3",     "ode"};
}

VerificationReport run_selector(const std::string& selector, int trials, std::uint64_t seed) {
  if (trials < 1) throw UsageError("trials must be >= 1");
  if (selector == "a2-add") return a2_add_suite(trials, seed);
  if (selector == "a2-mul") return a2_mul_suite(trials, seed);
  if (selector == "a2-trop") return a2_trop_suite(trials, seed);
  if (selector == "ode") return ode_suite();
  if (selector.rfind("poisson:", 0) == 0) {
    const std::string tag = selector.substr(8);
    const auto& tags = PainleveSystem::tags();
    if (std::find(tags.begin(), tags.end(), tag) == tags.end()) throw UsageError("unknown system " + tag);
    return poisson_suite(tag, seed);
  }
  static const std::regex mn(R"(mn:(\d+)x(\d+))");
  std::smatch m;
  if (std::regex_match(selector, m, mn)) {
    const int M = std::stoi(m[1]), N = std::stoi(m[2]);
    if (M < 2 || N < 2 || M > 8 || N > 8) throw UsageError("mn sizes must lie in [2, 8]");
    return lattice_suite(M, N, trials, seed);
  }
  throw UsageError("unknown suite \"" + selector + "\"");
}

bool SuiteReport::passed() const {
  for (const auto& r : reports)
    if (!r.passed()) return false;
  return true;
}

Json SuiteReport::to_json() const {
  Json j;
  j["tool"] = "weylp";
  j["version"] = WEYLP_VERSION;
  j["config"] = {{"suite", config.selector}, {"trials", config.trials}, {"seed", config.seed}};
  int counts[4] = {0, 0, 0, 0};
  for (const auto& r : reports)
    for (const auto& c : r.checks) ++counts[static_cast<int>(c.status)];
  j["status"] = passed() ? "pass" : "fail";
  j["summary"] = {{"checks", counts[0] + counts[1] + counts[2] + counts[3]},
                  {"pass", counts[0]},
                  {"fail", counts[1]},
                  {"vacuous", counts[2]},
                  {"inconclusive", counts[3]}};
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  j["suites"] = arr;
  if (config.timings) {
    Json t = Json::object();
    for (std::size_t k = 0; k < reports.size(); ++k) t[reports[k].name] = seconds[k];
    j["timings"] = t;
  }
  return j;
}

SuiteReport cmd_verify(const SuiteRun& run) {
  SuiteReport out;
  out.config = run;
  std::vector<std::string> selectors = run.selector == "all" ? all_selectors() : std::vector<std::string>{run.selector};
  for (const auto& s : selectors) {
    const auto t0 = std::chrono::steady_clock::now();
    out.reports.push_back(run_selector(s, run.trials, run.seed));
    out.reports.back().name = s;
    out.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return out;
}

}  // namespace weylp
