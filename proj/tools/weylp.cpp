#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weylp/a2.hpp"
#include "weylp/json_io.hpp"
#include "weylp/lattice.hpp"
#include "weylp/ode.hpp"
#include "weylp/poisson.hpp"
#include "weylp/sfexpr.hpp"
#include "weylp/suites.hpp"

using namespace weylp;

namespace {

struct Global {
  std::uint64_t seed = 1;
  int trials = 100;
  std::string format;
  std::string out;
};

/// Writes to --out or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

const char* kWordHelp =
    "Word syntax: tokens s<i>, r<k>, pi, w (or omega), optionally suffixed ^-1, separated by spaces or commas. "
    "The leftmost token acts first on the state.";

std::string csv_join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

std::vector<std::string> flat_strings(const Json& j) {
  std::vector<std::string> out;
  if (j.is_array()) {
    for (const auto& e : j)
      for (auto& s : flat_strings(e)) out.push_back(std::move(s));
  } else if (j.is_string()) {
    out.push_back(j.get<std::string>());
  } else {
    out.push_back(j.dump());
  }
  return out;
}

// ---- verify ----

int run_verify(const Global& g, const std::string& suite, bool timings) {
  SuiteRun run{suite, g.trials, g.seed, timings};
  SuiteReport rep = cmd_verify(run);
  Sink sink(g.out);
  sink.os() << rep.to_json().dump(2) << "\n";
  return rep.passed() ? 0 : 1;
}

// ---- evolve ----

struct EvolveOpts {
  std::string system;
  std::string state;
  int steps = 1;
  bool backward = false;
  int M = 2, N = 3, k = 1;
};

template <class State, class Step, class Row, class Csv>
int evolve_loop(const Global& g, State x, int steps, Step step, Row row, Csv csv, std::vector<std::string> header,
                std::function<std::string(const State&, const State&, int)> drift) {
  Sink sink(g.out);
  const bool as_csv = g.format == "csv";
  if (as_csv) sink.os() << "step," << csv_join(header) << "\n";
  auto emit = [&](const State& s, int n) {
    if (as_csv) sink.os() << n << "," << csv_join(csv(s)) << "\n";
    else sink.os() << Json{{"step", n}, {"state", row(s)}}.dump() << "\n";
  };
  const State x0 = x;
  emit(x, 0);
  for (int n = 1; n <= steps; ++n) {
    try {
      x = step(x);
    } catch (const PoleError& e) {
      std::cerr << "pole at step " << n << ": " << e.where() << "\n";
      return 1;
    }
    emit(x, n);
  }
  std::cerr << drift(x0, x, steps) << "\n";
  return 0;
}

int run_evolve(const Global& g, const EvolveOpts& o) {
  if (o.steps < 0) throw UsageError("--steps must be >= 0");
  if (o.system == "qp4") {
    if (o.state.empty()) throw UsageError("qp4 needs --state");
    StateA2Mul x = mul_state_from_json(load_json_arg(o.state));
    const Direction d = o.backward ? Direction::backward : Direction::forward;
    return evolve_loop<StateA2Mul>(
        g, x, o.steps, [d](const StateA2Mul& s) { return qp4_step(s, d); },
        [](const StateA2Mul& s) { return state_to_json(s); },
        [](const StateA2Mul& s) { return flat_strings(Json::array({state_to_json(s)["a"], state_to_json(s)["f"]})); },
        {"a0", "a1", "a2", "f0", "f1", "f2"},
        [d](const StateA2Mul& a, const StateA2Mul& b, int n) {
          const bool a_ok = a.a == b.a;
          Rational expect = a.f[0] * a.f[1] * a.f[2] * weylp::pow(a.q(), d == Direction::forward ? 2 * n : -2 * n);
          const bool f_ok = b.f[0] * b.f[1] * b.f[2] == expect;
          return std::string("drift: a ") + (a_ok ? "preserved" : "changed") + "; f0 f1 f2 q^(-2n) " +
                 (f_ok ? "preserved" : "changed");
        });
  }
  if (o.system == "up4") {
    if (o.state.empty()) throw UsageError("up4 needs --state");
    StateA2Trop x = trop_state_from_json(load_json_arg(o.state));
    if (o.backward) throw UsageError("up4 evolves forward only");
    return evolve_loop<StateA2Trop>(
        g, x, o.steps, [](const StateA2Trop& s) { return up4_step(s); },
        [](const StateA2Trop& s) { return state_to_json(s); },
        [](const StateA2Trop& s) { return flat_strings(Json::array({state_to_json(s)["A"], state_to_json(s)["F"]})); },
        {"A0", "A1", "A2", "F0", "F1", "F2"},
        [](const StateA2Trop& a, const StateA2Trop& b, int n) {
          Tropical expect = a.f[0] * a.f[1] * a.f[2];
          for (int k = 0; k < 2 * n; ++k) expect = expect * a.q();
          const bool ok = b.f[0] * b.f[1] * b.f[2] == expect;
          return std::string("drift: F0+F1+F2 - 2nQ ") + (ok ? "preserved" : "changed");
        });
  }
  if (o.system == "mn") {
    QPSystemState st;
    if (!o.state.empty()) {
      Json j = load_json_arg(o.state);
      st.x = lattice_from_json(j);
      if (j.contains("t"))
        for (const auto& v : j.at("t")) st.t.push_back(rational_from_json(v));
      else
        st.t.assign(st.x.M, Rational(1));
    } else {
      Sampler rng(g.seed);
      st.x = make_lattice_realization(o.M, o.N, {PQForm::corrected, true}).sample(rng);
      for (int i = 0; i < o.M; ++i) st.t.push_back(rng.small_positive(30));
    }
    if (static_cast<int>(st.t.size()) != st.x.M) throw InputError("need one t per row");
    if (o.k < 1 || o.k > st.x.M) throw UsageError("--k must lie in [1, M]");
    if (o.backward) throw UsageError("mn evolves forward only");
    const int k = o.k;
    std::vector<std::string> header;
    for (int i = 1; i <= st.x.M; ++i) header.push_back("t" + std::to_string(i));
    for (int i = 1; i <= st.x.M; ++i)
      for (int j = 1; j <= st.x.N; ++j) header.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
    auto row = [](const QPSystemState& s) {
      Json j = lattice_to_json(s.x);
      Json t = Json::array();
      for (const auto& v : s.t) t.push_back(v.str());
      j["t"] = t;
      return j;
    };
    return evolve_loop<QPSystemState>(
        g, st, o.steps, [k](const QPSystemState& s) { return qpainleve_step(s, k); }, row,
        [](const QPSystemState& s) {
          std::vector<std::string> v;
          for (const auto& t : s.t) v.push_back(t.str());
          for (auto& e : flat_strings(lattice_to_json(s.x)["x"])) v.push_back(std::move(e));
          return v;
        },
        header,
        [](const QPSystemState& a, const QPSystemState& b, int n) {
          bool ok = true;
          const Rational scale = weylp::pow(a.x.q, n);
          for (int j = 1; j <= a.x.N; ++j) {
            Rational pa(1), pb(1);
            for (int i = 1; i <= a.x.M; ++i) {
              pa = pa * a.x.at(i, j);
              pb = pb * b.x.at(i, j);
            }
            ok = ok && pb * scale == pa;
          }
          return std::string("drift: column products q^n ") + (ok ? "preserved" : "changed");
        });
  }
  throw UsageError("unknown system \"" + o.system + "\" (expected qp4, up4 or mn)");
}

// ---- orbit ----

template <class State>
int orbit_with(const Global& g, const Realization<State>& r, State x, const WeylWord& w) {
  try {
    x = apply_word(r, w, x);
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.where() << "\n";
    return 1;
  }
  Sink sink(g.out);
  sink.os() << r.to_json(x).dump() << "\n";
  return 0;
}

int run_orbit(const Global& g, const std::string& realization, const std::string& word, const std::string& state) {
  const WeylWord w = parse_word(word);
  if (state.empty()) throw UsageError("orbit needs --state");
  const Json j = load_json_arg(state);
  if (realization == "a2-add") return orbit_with(g, make_add_realization(), add_state_from_json(j), w);
  if (realization == "a2-mul") return orbit_with(g, make_mul_realization(), mul_state_from_json(j), w);
  if (realization == "a2-trop") return orbit_with(g, make_trop_realization(), trop_state_from_json(j), w);
  if (realization == "mn") {
    auto x = lattice_from_json(j);
    return orbit_with(g, make_lattice_realization(x.M, x.N), x, w);
  }
  if (realization == "mn-trop") {
    auto x = trop_lattice_from_json(j);
    return orbit_with(g, make_trop_lattice_realization(x.M, x.N), x, w);
  }
  throw UsageError("unknown realization \"" + realization + "\"");
}

// ---- ode ----

struct OdeOpts {
  std::string system = "sym-p4";
  std::string alpha = "1/3,1/3,1/3";
  std::string init = "1,1,1";
  double t0 = 0, t1 = 1, step = 1e-3;
  std::string word;
  bool consistency = false;
};

int run_ode(const Global& g, const OdeOpts& o) {
  const auto alpha = parse_double_list(o.alpha);
  const auto init = parse_double_list(o.init);
  Sink sink(g.out);
  if (o.consistency) {
    if (alpha.size() != 3 || init.size() != 2) throw UsageError("consistency needs 3 alpha values and --init q,p");
    auto fc = hamiltonian_flow_consistency("IV", init[0], init[1], {alpha[0], alpha[1], alpha[2]}, o.t0, o.t1, o.step);
    sink.os() << fc.to_json().dump(2) << "\n";
    return fc.truncated ? 1 : 0;
  }
  OdeSystem sys;
  Eigen::VectorXd y0;
  if (o.system == "sym-p4") {
    if (alpha.size() != 3 || init.size() != 3) throw UsageError("sym-p4 needs 3 alpha and 3 initial values");
    if (!o.word.empty()) {
      auto r = backlund_covariance_test(parse_word(o.word), {alpha[0], alpha[1], alpha[2]},
                                        {init[0], init[1], init[2]}, o.t0, o.t1, o.step);
      sink.os() << r.to_json().dump(2) << "\n";
      return r.status == Status::fail ? 1 : 0;
    }
    sys = sym_p4({alpha[0], alpha[1], alpha[2]});
    y0 = Eigen::Vector3d(init[0], init[1], init[2]);
  } else if (o.system.rfind("H", 0) == 0) {
    const std::string tag = o.system.substr(o.system.find_first_not_of("H-_"));
    const auto& tags = PainleveSystem::tags();
    if (std::find(tags.begin(), tags.end(), tag) == tags.end()) throw UsageError("unknown system " + o.system);
    if (init.size() != 2) throw UsageError("Hamiltonian flows need --init q,p");
    sys = hamiltonian_flow(PainleveSystem::audited(tag), alpha);
    y0 = Eigen::Vector2d(init[0], init[1]);
  } else {
    throw UsageError("unknown system \"" + o.system + "\" (expected sym-p4 or H-II, H-IV, H-V, H-VI)");
  }
  auto tr = integrate(sys, y0, o.t0, o.t1, o.step);
  if (g.format == "json") {
    sink.os() << tr.meta_json().dump() << "\n" << tr.to_jsonl();
  } else {
    sink.os() << tr.to_csv();
  }
  if (tr.truncated) {
    std::cerr << "truncated: " << tr.diagnostic << "\n";
    return 1;
  }
  return 0;
}

// ---- audit ----

int run_audit(const Global& g, const std::string& system) {
  std::vector<std::string> tags = system == "all" ? PainleveSystem::tags() : std::vector<std::string>{system};
  Json out = Json::array();
  int rc = 0;
  for (const auto& t : tags) {
    const auto& known = PainleveSystem::tags();
    if (std::find(known.begin(), known.end(), t) == known.end()) throw UsageError("unknown system " + t);
    try {
      out.push_back(convention_audit(t, g.seed).to_json());
    } catch (const std::runtime_error& e) {
      out.push_back({{"system", t}, {"error", e.what()}});
      rc = 1;
    }
  }
  Sink sink(g.out);
  sink.os() << out.dump(2) << "\n";
  return rc;
}

// ---- limit-check ----

struct LimitOpts {
  std::string mode = "degeneration";
  std::string word = "s1";
  std::string eps = "1e-2,1e-3";
  std::string state;
  bool with_T = false;
  int M = 2, N = 3;
};

int run_limit(const Global& g, const LimitOpts& o) {
  const WeylWord w = parse_word(o.word);
  const auto eps = parse_double_list(o.eps);
  if (eps.empty()) throw UsageError("--eps needs at least one value");
  Json out;
  out["mode"] = o.mode;
  out["word"] = format_word(w);
  out["eps"] = eps;
  Json rows = Json::array();
  if (o.mode == "degeneration") {
    std::vector<StateA2Add> states;
    if (!o.state.empty()) {
      states.push_back(add_state_from_json(load_json_arg(o.state)));
    } else {
      for (int t = 0; t < g.trials; ++t) {
        Sampler rng(g.seed, static_cast<std::uint64_t>(t));
        StateA2Add x;
        for (int j = 0; j < 3; ++j) {
          x.alpha[j] = rng.small_positive(20);
          x.phi[j] = rng.small_positive(20);
        }
        states.push_back(x);
      }
    }
    for (const auto& x : states) {
      Json row;
      row["state"] = state_to_json(x);
      Json errs = Json::array();
      std::vector<double> maxes;
      for (double e : eps) {
        auto d = degeneration_check(x, e, w);
        errs.push_back(d.pole ? Json("pole") : Json(d.max_error()));
        maxes.push_back(d.pole ? NAN : d.max_error());
      }
      row["max_error"] = errs;
      if (maxes.size() >= 2 && maxes[1] > 0) row["ratio"] = maxes[0] / maxes[1];
      rows.push_back(row);
    }
  } else if (o.mode == "ud") {
    StateA2Trop x;
    if (!o.state.empty()) {
      x = trop_state_from_json(load_json_arg(o.state));
    } else {
      Sampler rng(g.seed);
      for (int j = 0; j < 3; ++j) {
        x.a[j] = Tropical(rng.uniform(-5, 5));
        x.f[j] = Tropical(rng.uniform(-5, 5));
      }
    }
    out["state"] = state_to_json(x);
    out["with_T"] = o.with_T;
    for (const auto& r : ud_consistency_check(w, o.with_T, x, eps)) rows.push_back({{"eps", r.eps}, {"error", r.max_error()}});
  } else if (o.mode == "lattice-ud") {
    TropLatticeState x;
    if (!o.state.empty()) {
      x = trop_lattice_from_json(load_json_arg(o.state));
    } else {
      Sampler rng(g.seed);
      x = TropLatticeState(o.M, o.N, Tropical(rng.uniform(-3, 3)), Tropical(rng.uniform(-3, 3)));
      for (int i = 0; i < o.M; ++i)
        for (int j = 0; j < o.N; ++j) x.x(i, j) = Tropical(rng.uniform(-5, 5));
    }
    out["state"] = lattice_to_json(x);
    auto errs = lattice_ud_probe(w, x, eps);
    for (std::size_t k = 0; k < eps.size(); ++k) rows.push_back({{"eps", eps[k]}, {"error", errs[k]}});
  } else {
    throw UsageError("unknown mode \"" + o.mode + "\" (expected degeneration, ud or lattice-ud)");
  }
  out["rows"] = rows;
  Sink sink(g.out);
  sink.os() << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact affine Weyl group actions, discrete Painleve flows and their verification suites", "weylp"};
  app.set_version_flag("--version", std::string(WEYLP_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(kWordHelp);

  Global g;
  app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--trials", g.trials, "Random states per check")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "Output file (default stdout)");

  std::string suite;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
  verify->add_option("--suite", suite, "a2-add, a2-mul, a2-trop, poisson:J, mn:MxN, ode or all")->required();
  verify->add_flag("--timings", timings, "Include wall-clock timings (the report is then not reproducible)");

  EvolveOpts ev;
  auto* evolve = app.add_subcommand("evolve", "Iterate a discrete time evolution, one state per line");
  evolve->add_option("--system", ev.system, "qp4, up4 or mn")->required();
  evolve->add_option("--state", ev.state, "Initial state as JSON text or a file path");
  evolve->add_option("--steps", ev.steps, "Number of steps")->capture_default_str();
  evolve->add_flag("--backward", ev.backward, "Step with T^-1 (qp4 only)");
  evolve->add_option("--M", ev.M, "Rows of a random mn state")->capture_default_str();
  evolve->add_option("--N", ev.N, "Columns of a random mn state")->capture_default_str();
  evolve->add_option("--k", ev.k, "Time index of T_k for mn")->capture_default_str();

  std::string realization, word, ostate;
  auto* orbit = app.add_subcommand("orbit", "Apply a word to a state");
  orbit->add_option("--realization", realization, "a2-add, a2-mul, a2-trop, mn or mn-trop")->required();
  orbit->add_option("--word", word, "Word, leftmost token first")->required();
  orbit->add_option("--state", ostate, "State as JSON text or a file path")->required();

  OdeOpts od;
  auto* ode = app.add_subcommand("ode", "Integrate sym-p4 or a Hamiltonian flow with fixed-step RK4");
  ode->add_option("--system", od.system, "sym-p4, H-II, H-IV, H-V or H-VI")->capture_default_str();
  ode->add_option("--alpha", od.alpha, "Comma-separated parameters")->capture_default_str();
  ode->add_option("--init", od.init, "Comma-separated initial state")->capture_default_str();
  ode->add_option("--t0", od.t0)->capture_default_str();
  ode->add_option("--t1", od.t1)->capture_default_str();
  ode->add_option("--step", od.step)->capture_default_str();
  ode->add_option("--word", od.word, "Report Backlund covariance of this word instead of a trajectory");
  ode->add_flag("--consistency", od.consistency, "Compare the H-IV flow from --init q,p with sym-p4");

  std::string audit_system = "all";
  auto* audit = app.add_subcommand("audit", "Enumerate sign conventions of the Hamiltonian systems");
  audit->add_option("--system", audit_system, "II, IV, V, VI or all")->capture_default_str();

  LimitOpts lim;
  auto* limit = app.add_subcommand("limit-check", "Probe the continuum and ultra-discrete limits");
  limit->add_option("--mode", lim.mode, "degeneration, ud or lattice-ud")->capture_default_str();
  limit->add_option("--word", lim.word)->capture_default_str();
  limit->add_option("--eps", lim.eps, "Comma-separated epsilon values")->capture_default_str();
  limit->add_option("--state", lim.state, "State as JSON text or a file path");
  limit->add_flag("--with-T", lim.with_T, "Append the time step after the word (ud mode)");
  limit->add_option("--M", lim.M)->capture_default_str();
  limit->add_option("--N", lim.N)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      if (g.format == "csv") throw UsageError("verify writes JSON only");
      return run_verify(g, suite, timings);
    }
    if (*evolve) return run_evolve(g, ev);
    if (*orbit) return run_orbit(g, realization, word, ostate);
    if (*ode) {
      if (g.format.empty()) g.format = "csv";
      return run_ode(g, od);
    }
    if (*audit) return run_audit(g, audit_system);
    if (*limit) return run_limit(g, lim);
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
