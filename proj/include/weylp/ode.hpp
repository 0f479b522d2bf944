#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "weylp/poisson.hpp"
#include "weylp/report.hpp"
#include "weylp/word.hpp"

namespace weylp {

inline constexpr double kPoleBand = 1e-6;
inline constexpr double kBlowUp = 1e6;

/// Right-hand side plus a guard returning the smallest denominator magnitude at (t, y).
struct OdeSystem {
  std::string tag;
  std::vector<std::string> coords;
  std::vector<double> params;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> rhs;
  std::function<double(double, const Eigen::VectorXd&)> guard;
};

struct ODETrajectory {
  std::string system;
  std::vector<std::string> coords;
  std::vector<double> params;
  std::string method = "rk4";
  double step = 0;
  std::vector<double> t;
  std::vector<Eigen::VectorXd> y;
  bool truncated = false;
  std::string diagnostic;

  const Eigen::VectorXd& final_state() const { return y.back(); }
  std::string to_csv() const;
  /// One JSON object per sample.
  std::string to_jsonl() const;
  Json meta_json() const;
};

/// phi_j' = phi_j (phi_{j+1} - phi_{j+2}) + alpha_j.
OdeSystem sym_p4(const std::array<double, 3>& alpha);

/// dq/dt = o H_p, dp/dt = -o H_q for a system with numeric alpha values.
OdeSystem hamiltonian_flow(const PainleveSystem& sys, const std::vector<double>& alpha);

/// Fixed-step classical RK4 from t0 to t1. The step is shrunk so that it divides the span.
/// Stops early, with truncated = true, when the guard drops below the pole band or the state blows up.
ODETrajectory integrate(const OdeSystem& sys, const Eigen::VectorXd& y0, double t0, double t1, double step);

/// max over samples of |sum(phi) - k t - c|.
double linear_drift(const ODETrajectory& tr, double k);

struct CovarianceResult {
  std::string word;
  double discrepancy = 0;
  Status status = Status::pass;
  std::string note;
  Json to_json() const;
};

/// Transform-then-integrate versus integrate-then-transform for the additive action on SymP4.
CovarianceResult backlund_covariance_test(const WeylWord& word, const std::array<double, 3>& alpha,
                                          const std::array<double, 3>& phi0, double t0, double t1, double step,
                                          double tol = 1e-6);

/// Every word of length <= max_len over {s0, s1, s2, pi}.
std::vector<WeylWord> short_words(int max_len);

std::vector<CovarianceResult> backlund_covariance_sweep(const std::array<double, 3>& alpha,
                                                        const std::array<double, 3>& phi0, double t0, double t1,
                                                        double step, int max_len = 3, double tol = 1e-6);

struct FlowConsistency {
  double discrepancy = 0;
  Eigen::VectorXd from_hamiltonian;
  Eigen::VectorXd from_symmetric;
  bool truncated = false;
  Json to_json() const;
};

/// Integrates H_IV from (q, p) and SymP4 from psi = 2 phi(q, p, t0) with alpha^sym = 2 alpha; compares at t1.
FlowConsistency hamiltonian_flow_consistency(const std::string& tag, double q0, double p0,
                                             const std::array<double, 3>& alpha, double t0, double t1, double step);

struct OrderTest {
  double error_h = 0, error_half = 0, ratio = 0;
  Json to_json() const;
};

/// Global endpoint error against the rational solution (t/3 - 1/t, t/3, t/3 + 1/t) on [3, 4].
OrderTest rk4_order_test(double h);

}  // namespace weylp
