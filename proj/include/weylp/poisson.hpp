#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylp/cartan.hpp"
#include "weylp/polynomial.hpp"
#include "weylp/report.hpp"
#include "weylp/word.hpp"

namespace weylp {

/// Sign choices that distinguish the variants examined by the convention audit.
struct PoissonConvention {
  int orientation = +1;  // {f,g} = o (f_p g_q - f_q g_p)
  int alpha_sign = +1;   // sign of the alpha-linear part of H
  int t_sign = +1;       // sign of t inside H_II
  bool vi_constant_as_printed = true;  // VI constant term a1(a1+a2) vs a2(a1+a2)

  std::string str() const;
  friend bool operator==(const PoissonConvention&, const PoissonConvention&) = default;
};

/// Variables are ordered q, p, t, alpha_0 .. alpha_l.
inline constexpr std::size_t kVarQ = 0;
inline constexpr std::size_t kVarP = 1;
inline constexpr std::size_t kVarT = 2;
inline constexpr std::size_t alpha_var(int j) { return 3 + static_cast<std::size_t>(j); }

class PainleveSystem {
 public:
  /// tag in {II, IV, V, VI}.
  static PainleveSystem make(const std::string& tag, const PoissonConvention& conv);
  /// The convention selected by the audit.
  static PainleveSystem audited(const std::string& tag);
  static PoissonConvention audited_convention(const std::string& tag);
  static const std::vector<std::string>& tags();

  const std::string& tag() const { return tag_; }
  const CartanData& cartan() const { return cartan_; }
  const RingPtr& ring() const { return ring_; }
  const PoissonConvention& convention() const { return conv_; }
  int rank() const { return cartan_.size(); }

  /// Stored polynomial: H, t*H or t(t-1)*H.
  const MultiPoly& stored_hamiltonian() const { return stored_h_; }
  const MultiPoly& prefactor() const { return prefactor_; }
  RatFunc hamiltonian() const { return RatFunc(stored_h_, prefactor_); }
  const std::vector<MultiPoly>& phi() const { return phi_; }
  const std::vector<Rational>& marks() const { return marks_; }
  bool has_pi() const { return has_pi_; }
  const RatFunc& pi_q() const { return pi_q_; }
  const RatFunc& pi_p() const { return pi_p_; }

  MultiPoly var(std::size_t i) const { return MultiPoly::variable(ring_, i); }

  /// Replaces alpha_k by its value from sum n_i alpha_i = 1.
  RatFunc normalize(const RatFunc& f, int eliminate = 0) const;

 private:
  std::string tag_;
  CartanData cartan_;
  RingPtr ring_;
  PoissonConvention conv_;
  MultiPoly stored_h_, prefactor_;
  std::vector<MultiPoly> phi_;
  std::vector<Rational> marks_;
  bool has_pi_ = false;
  RatFunc pi_q_, pi_p_;
};

MultiPoly poisson_bracket(const MultiPoly& f, const MultiPoly& g, int orientation = +1);
RatFunc poisson_bracket(const RatFunc& f, const RatFunc& g, int orientation = +1);

/// delta(f) = {H, f} + df/dt.
RatFunc derivation_delta(const PainleveSystem& sys, const RatFunc& f);

/// Images of every ring variable under one automorphism.
struct BacklundMap {
  std::string label;
  std::vector<RatFunc> images;
  /// Number of nonzero iterated brackets before the series terminated.
  int series_depth = 0;

  RatFunc apply(const RatFunc& f) const { return compose(f, images); }
  std::vector<Rational> apply_point(const std::vector<Rational>& x) const;
};

/// Raised when ad(phi_i) fails to terminate within the cap.
class NilpotencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kNilpotencyCap = 10;

BacklundMap build_backlund(const PainleveSystem& sys, int i);
/// Diagram rotation for the A-type systems; throws for VI.
BacklundMap build_pi(const PainleveSystem& sys);
BacklundMap identity_map(const PainleveSystem& sys);

/// Images of the product g1 g2 ... gn, composed symbolically.
/// Returns nullopt when an intermediate exceeds `term_budget` terms.
std::optional<BacklundMap> compose_word(const std::vector<const BacklundMap*>& word, std::size_t term_budget);

VerificationReport check_serre(const PainleveSystem& sys);
VerificationReport check_backlund(const PainleveSystem& sys, std::uint64_t seed = 1);
VerificationReport symmetric_form_check(const PainleveSystem& sys);
CheckResult invariant_divisor_check(const PainleveSystem& sys, int j);

struct AuditVariant {
  PoissonConvention convention;
  bool serre = false;
  bool backlund = false;
  bool divisors = false;
  bool passed() const { return serre && backlund && divisors; }
};

struct AuditReport {
  std::string tag;
  std::vector<AuditVariant> variants;
  PoissonConvention selected;
  bool printed_passes = false;
  /// Number of passing classes under (o, sigma) ~ (-o, -sigma).
  int passing_classes = 0;
  std::string diff;  // human readable printed-vs-audited summary
  Json to_json() const;
};

/// Enumerates sign variants and selects the unique consistent class.
/// Throws std::runtime_error if zero or several classes pass.
AuditReport convention_audit(const std::string& tag, std::uint64_t seed = 1);

}  // namespace weylp
