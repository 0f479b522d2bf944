#include "weylp/ode.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "weylp/a2.hpp"
#include "weylp/parallel.hpp"

namespace weylp {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

AddState<double> add_state(const std::array<double, 3>& alpha, const Eigen::VectorXd& phi) {
  AddState<double> s;
  s.alpha = alpha;
  for (int j = 0; j < 3; ++j) s.phi[j] = phi(j);
  return s;
}

Eigen::VectorXd phi_vec(const AddState<double>& s) { return Eigen::Vector3d(s.phi[0], s.phi[1], s.phi[2]); }

/// Applies the word, refusing to divide by anything inside the pole band.
AddState<double> guarded_word(const WeylWord& w, AddState<double> s) {
  for (const auto& g : w) {
    if (g.family == Family::s && std::abs(s.phi[((g.index % 3) + 3) % 3]) < kPoleBand)
      throw PoleError("phi_" + std::to_string(g.index) + " near zero before " + g.str());
    s = add_apply(g, s);
  }
  return s;
}

std::vector<double> ring_point(const PainleveSystem& sys, double q, double p, double t, const std::vector<double>& a) {
  std::vector<double> x(sys.ring()->size(), 0.0);
  x[kVarQ] = q;
  x[kVarP] = p;
  x[kVarT] = t;
  for (std::size_t j = 0; j < a.size(); ++j) x[alpha_var(static_cast<int>(j))] = a[j];
  return x;
}

}  // namespace

std::string ODETrajectory::to_csv() const {
  std::ostringstream os;
  os << "t";
  for (const auto& c : coords) os << "," << c;
  os << "\n";
  for (std::size_t k = 0; k < t.size(); ++k) {
    os << fmt(t[k]);
    for (Eigen::Index i = 0; i < y[k].size(); ++i) os << "," << fmt(y[k](i));
    os << "\n";
  }
  return os.str();
}

std::string ODETrajectory::to_jsonl() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.size(); ++k) {
    Json row;
    row["t"] = t[k];
    for (std::size_t i = 0; i < coords.size(); ++i) row[coords[i]] = y[k](static_cast<Eigen::Index>(i));
    os << row.dump() << "\n";
  }
  return os.str();
}

Json ODETrajectory::meta_json() const {
  Json j;
  j["system"] = system;
  j["params"] = params;
  j["method"] = method;
  j["step"] = step;
  j["samples"] = t.size();
  j["truncated"] = truncated;
  if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
  return j;
}

OdeSystem sym_p4(const std::array<double, 3>& alpha) {
  OdeSystem s;
  s.tag = "sym-p4";
  s.coords = {"phi0", "phi1", "phi2"};
  s.params.assign(alpha.begin(), alpha.end());
  s.rhs = [alpha](double, const Eigen::VectorXd& y) {
    Eigen::VectorXd d(3);
    for (int j = 0; j < 3; ++j) d(j) = y(j) * (y((j + 1) % 3) - y((j + 2) % 3)) + alpha[j];
    return d;
  };
  s.guard = [](double, const Eigen::VectorXd&) { return 1.0; };
  return s;
}

OdeSystem hamiltonian_flow(const PainleveSystem& sys, const std::vector<double>& alpha) {
  if (static_cast<int>(alpha.size()) != sys.rank()) throw std::invalid_argument("wrong number of alpha values");
  OdeSystem s;
  s.tag = "H" + sys.tag();
  s.coords = {"q", "p"};
  s.params = alpha;
  const RatFunc h = sys.hamiltonian();
  const RatFunc hq = h.derivative(kVarQ), hp = h.derivative(kVarP);
  const int o = sys.convention().orientation;
  s.rhs = [sys, hq, hp, o, alpha](double t, const Eigen::VectorXd& y) {
    auto x = ring_point(sys, y(0), y(1), t, alpha);
    Eigen::VectorXd d(2);
    d(0) = o * hp.evaluate(std::span<const double>(x));
    d(1) = -o * hq.evaluate(std::span<const double>(x));
    return d;
  };
  s.guard = [sys, alpha](double t, const Eigen::VectorXd& y) {
    auto x = ring_point(sys, y(0), y(1), t, alpha);
    return std::abs(sys.prefactor().evaluate(std::span<const double>(x)));
  };
  return s;
}

ODETrajectory integrate(const OdeSystem& sys, const Eigen::VectorXd& y0, double t0, double t1, double step) {
  if (!(step > 0)) throw std::invalid_argument("step must be positive");
  if (!(t1 >= t0)) throw std::invalid_argument("t1 must not precede t0");
  ODETrajectory tr;
  tr.system = sys.tag;
  tr.coords = sys.coords;
  tr.params = sys.params;
  const long n = static_cast<long>(std::ceil((t1 - t0) / step - 1e-9));
  const double h = n > 0 ? (t1 - t0) / static_cast<double>(n) : step;
  tr.step = h;
  if (sys.guard(t0, y0) < kPoleBand) throw PoleError("initial state inside the pole band");
  tr.t.push_back(t0);
  tr.y.push_back(y0);
  Eigen::VectorXd y = y0;
  for (long k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    Eigen::VectorXd k1, k2, k3, k4;
    try {
      k1 = sys.rhs(t, y);
      k2 = sys.rhs(t + h / 2, y + h / 2 * k1);
      k3 = sys.rhs(t + h / 2, y + h / 2 * k2);
      k4 = sys.rhs(t + h, y + h * k3);
    } catch (const PoleError& e) {
      tr.truncated = true;
      tr.diagnostic = "pole near t=" + fmt(t) + ": " + e.where();
      return tr;
    }
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    const double tn = k + 1 == n ? t1 : t0 + static_cast<double>(k + 1) * h;
    if (!y.allFinite() || y.cwiseAbs().maxCoeff() > kBlowUp) {
      tr.truncated = true;
      tr.diagnostic = "blow-up near t=" + fmt(tn);
      return tr;
    }
    if (sys.guard(tn, y) < kPoleBand) {
      tr.truncated = true;
      tr.diagnostic = "entered pole band at t=" + fmt(tn);
      return tr;
    }
    tr.t.push_back(tn);
    tr.y.push_back(y);
  }
  return tr;
}

double linear_drift(const ODETrajectory& tr, double k) {
  const double c = tr.y.front().sum() - k * tr.t.front();
  double drift = 0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) drift = std::max(drift, std::abs(tr.y[i].sum() - k * tr.t[i] - c));
  return drift;
}

Json CovarianceResult::to_json() const {
  Json j;
  j["word"] = word;
  j["discrepancy"] = discrepancy;
  j["status"] = to_string(status);
  if (!note.empty()) j["note"] = note;
  return j;
}

CovarianceResult backlund_covariance_test(const WeylWord& word, const std::array<double, 3>& alpha,
                                          const std::array<double, 3>& phi0, double t0, double t1, double step,
                                          double tol) {
  CovarianceResult r;
  r.word = format_word(word);
  const Eigen::VectorXd y0 = Eigen::Vector3d(phi0[0], phi0[1], phi0[2]);
  try {
    AddState<double> start = guarded_word(word, add_state(alpha, y0));
    ODETrajectory a = integrate(sym_p4(start.alpha), phi_vec(start), t0, t1, step);
    ODETrajectory b = integrate(sym_p4(alpha), y0, t0, t1, step);
    if (a.truncated || b.truncated) {
      r.status = Status::inconclusive;
      r.note = a.truncated ? a.diagnostic : b.diagnostic;
      return r;
    }
    AddState<double> end = guarded_word(word, add_state(alpha, b.final_state()));
    r.discrepancy = (phi_vec(end) - a.final_state()).cwiseAbs().maxCoeff();
  } catch (const PoleError& e) {
    r.status = Status::inconclusive;
    r.note = e.where();
    return r;
  }
  r.status = r.discrepancy <= tol ? Status::pass : Status::fail;
  return r;
}

std::vector<WeylWord> short_words(int max_len) {
  const std::vector<GeneratorToken> gens = parse_word("s0 s1 s2 pi");
  std::vector<WeylWord> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (const auto& g : gens) {
        WeylWord w = out[k];
        w.push_back(g);
        out.push_back(w);
      }
    begin = end;
  }
  return out;
}

std::vector<CovarianceResult> backlund_covariance_sweep(const std::array<double, 3>& alpha,
                                                        const std::array<double, 3>& phi0, double t0, double t1,
                                                        double step, int max_len, double tol) {
  const auto words = short_words(max_len);
  std::vector<CovarianceResult> out(words.size());
  parallel_for(words.size(), [&](std::size_t k) {
    out[k] = backlund_covariance_test(words[k], alpha, phi0, t0, t1, step, tol);
  });
  return out;
}

Json FlowConsistency::to_json() const {
  Json j;
  j["discrepancy"] = discrepancy;
  j["truncated"] = truncated;
  j["hamiltonian"] = std::vector<double>(from_hamiltonian.data(), from_hamiltonian.data() + from_hamiltonian.size());
  j["symmetric"] = std::vector<double>(from_symmetric.data(), from_symmetric.data() + from_symmetric.size());
  return j;
}

FlowConsistency hamiltonian_flow_consistency(const std::string& tag, double q0, double p0,
                                             const std::array<double, 3>& alpha, double t0, double t1, double step) {
  if (tag != "IV") throw std::invalid_argument("flow consistency is defined for IV only");
  const PainleveSystem sys = PainleveSystem::audited(tag);
  const std::vector<double> a(alpha.begin(), alpha.end());
  auto psi = [&](double q, double p, double t) {
    auto x = ring_point(sys, q, p, t, a);
    Eigen::VectorXd v(3);
    for (int j = 0; j < 3; ++j) v(j) = 2 * sys.phi()[j].evaluate(std::span<const double>(x));
    return v;
  };
  FlowConsistency fc;
  ODETrajectory ham = integrate(hamiltonian_flow(sys, a), Eigen::Vector2d(q0, p0), t0, t1, step);
  ODETrajectory sym = integrate(sym_p4({2 * alpha[0], 2 * alpha[1], 2 * alpha[2]}), psi(q0, p0, t0), t0, t1, step);
  fc.truncated = ham.truncated || sym.truncated;
  const auto& qp = ham.final_state();
  fc.from_hamiltonian = psi(qp(0), qp(1), ham.t.back());
  fc.from_symmetric = sym.final_state();
  fc.discrepancy = (fc.from_hamiltonian - fc.from_symmetric).cwiseAbs().maxCoeff();
  return fc;
}

Json OrderTest::to_json() const { return {{"error_h", error_h}, {"error_half", error_half}, {"ratio", ratio}}; }

OrderTest rk4_order_test(double h) {
  const std::array<double, 3> alpha{2.0 / 3, -1.0 / 3, 2.0 / 3};
  auto exact = [](double t) { return Eigen::Vector3d(t / 3 - 1 / t, t / 3, t / 3 + 1 / t); };
  auto err = [&](double step) {
    auto tr = integrate(sym_p4(alpha), exact(3.0), 3.0, 4.0, step);
    if (tr.truncated) throw PoleError(tr.diagnostic);
    return (tr.final_state() - exact(4.0)).cwiseAbs().maxCoeff();
  };
  OrderTest r;
  r.error_h = err(h);
  r.error_half = err(h / 2);
  r.ratio = r.error_h / r.error_half;
  return r;
}

}  // namespace weylp
