#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "weylp/cartan.hpp"
#include "weylp/rational.hpp"
#include "weylp/realization.hpp"
#include "weylp/semiring.hpp"
#include "weylp/word.hpp"

namespace weylp {

/// (alpha, phi) coordinates of the additive A2 action, optionally with t.
template <class S>
struct AddState {
  std::array<S, 3> alpha;
  std::array<S, 3> phi;
  std::optional<S> t;
};
using StateA2Add = AddState<Rational>;

/// (a, f) coordinates of the multiplicative action; with S = Tropical these are (A, F).
template <class S>
struct MulState {
  std::array<S, 3> a;
  std::array<S, 3> f;
  std::optional<S> t;

  /// q = a0 a1 a2 (tropically A0+A1+A2).
  S q() const { return a[0] * a[1] * a[2]; }
};
using StateA2Mul = MulState<Rational>;
using StateA2Trop = MulState<Tropical>;

/// Denominator of the multiplicative reflection factor.
/// `own` uses 1 + a_i f_i; `target` uses 1 + a_i f_j with j the coordinate being updated.
enum class MulDenominator { own, target };

inline const CartanData& a2_cartan() {
  static const CartanData c = CartanData::affine_A(2);
  return c;
}

namespace detail {
inline int mod3(int i) { return ((i % 3) + 3) % 3; }
template <class T>
std::array<T, 3> rotate(const std::array<T, 3>& v, bool inverse) {
  if (inverse) return {v[2], v[0], v[1]};
  return {v[1], v[2], v[0]};
}
}  // namespace detail

/// s_i(alpha_j) = alpha_j - alpha_i a_ij, s_i(phi_j) = phi_j + (alpha_i/phi_i) u_ij; pi rotates indices.
template <class S>
AddState<S> add_apply(const GeneratorToken& g, const AddState<S>& x, const CartanData& c = a2_cartan()) {
  AddState<S> y = x;
  if (g.family == Family::pi) {
    y.alpha = detail::rotate(x.alpha, g.inverse);
    y.phi = detail::rotate(x.phi, g.inverse);
    return y;
  }
  if (g.family != Family::s) throw std::invalid_argument("additive A2 has no generator " + g.str());
  const int i = detail::mod3(g.index);
  const S& ai = x.alpha[i];
  if (x.phi[i] == S(0)) {
    if (ai == S(0)) return y;
    throw PoleError("phi_" + std::to_string(i));
  }
  const S ratio = ai / x.phi[i];
  for (int j = 0; j < 3; ++j) {
    y.alpha[j] = x.alpha[j] - ai * S(c.a(i, j));
    if (c.u(i, j) != 0) y.phi[j] = x.phi[j] + ratio * S(c.u(i, j));
  }
  return y;
}

/// s_i(a_j) = a_j a_i^{-a_ij}, s_i(f_j) = f_j ((a_i+f_i)/(1+a_i f_i))^{u_ij}; pi rotates indices.
/// Uses only semiring operations, so it also runs tropically and log-scaled.
template <class S>
MulState<S> mul_apply(const GeneratorToken& g, const MulState<S>& x, MulDenominator den = MulDenominator::own,
                      const CartanData& c = a2_cartan()) {
  MulState<S> y = x;
  if (g.family == Family::pi) {
    y.a = detail::rotate(x.a, g.inverse);
    y.f = detail::rotate(x.f, g.inverse);
    return y;
  }
  if (g.family != Family::s) throw std::invalid_argument("multiplicative A2 has no generator " + g.str());
  const int i = detail::mod3(g.index);
  const S one = unit_like(x.a[i]);
  const S& ai = x.a[i];
  const S num = ai + x.f[i];
  for (int j = 0; j < 3; ++j) {
    y.a[j] = x.a[j] * ipow(ai, -c.a(i, j));
    const int u = c.u(i, j);
    if (u == 0) continue;
    const int k = den == MulDenominator::own ? i : j;
    const S d = one + ai * x.f[k];
    const std::string dname = "1+a_" + std::to_string(i) + " f_" + std::to_string(k);
    S ratio = u > 0 ? checked_div(num, d, dname) : checked_div(d, num, "a_" + std::to_string(i) + "+f_" + std::to_string(i));
    y.f[j] = x.f[j] * ipow(ratio, u > 0 ? u : -u);
  }
  return y;
}

/// Forward step: T(f_j) = a_j a_{j+1} f_{j+1} D_{j+2} / D_j with
/// D_j = 1 + a_j f_j + a_j a_{j+1} f_j f_{j+1}; a fixed; t -> q t.
template <class S>
MulState<S> qp4_forward(const MulState<S>& x) {
  const S one = unit_like(x.a[0]);
  std::array<S, 3> D;
  for (int j = 0; j < 3; ++j) {
    int j1 = (j + 1) % 3;
    D[j] = one + x.a[j] * x.f[j] + x.a[j] * x.a[j1] * x.f[j] * x.f[j1];
  }
  MulState<S> y = x;
  for (int j = 0; j < 3; ++j) {
    int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    y.f[j] = x.a[j] * x.a[j1] * x.f[j1] * checked_div(D[j2], D[j], "D_" + std::to_string(j));
  }
  if (x.t) y.t = *x.t * x.q();
  return y;
}

/// Exact inverse of qp4_forward: f_j = f'_{j-1}/(a_{j-1} a_j) E_{j-2}/E_j with
/// E_j = 1 + f'_j/a_j + f'_j f'_{j-1}/(a_j a_{j-1}).
template <class S>
MulState<S> qp4_backward(const MulState<S>& x) {
  const S one = unit_like(x.a[0]);
  std::array<S, 3> E;
  for (int j = 0; j < 3; ++j) {
    int jm = (j + 2) % 3;
    E[j] = one + x.f[j] / x.a[j] + x.f[j] * x.f[jm] / (x.a[j] * x.a[jm]);
  }
  MulState<S> y = x;
  for (int j = 0; j < 3; ++j) {
    int jm = (j + 2) % 3, jm2 = (j + 1) % 3;
    y.f[j] = x.f[jm] / (x.a[jm] * x.a[j]) * checked_div(E[jm2], E[j], "E_" + std::to_string(j));
  }
  if (x.t) y.t = *x.t / x.q();
  return y;
}

enum class Direction { forward, backward };

template <class S>
MulState<S> qp4_step(const MulState<S>& x, Direction d) {
  return d == Direction::forward ? qp4_forward(x) : qp4_backward(x);
}

inline StateA2Trop trop_apply(const GeneratorToken& g, const StateA2Trop& x) { return mul_apply(g, x); }
inline StateA2Trop up4_step(const StateA2Trop& x) { return qp4_forward(x); }

// Realizations for the relation verifier.
Realization<StateA2Add> make_add_realization(const CartanData& c = a2_cartan());
Realization<StateA2Mul> make_mul_realization(MulDenominator den = MulDenominator::own);
Realization<StateA2Trop> make_trop_realization();

Json state_to_json(const StateA2Add& x);
Json state_to_json(const StateA2Mul& x);
Json state_to_json(const StateA2Trop& x);

/// Per-coordinate pullback error of one word at one eps.
struct DegenerationRow {
  double eps = 0;
  std::array<double, 6> error{};  // alpha_0..2, phi_0..2
  bool pole = false;
  double max_error() const;
};

/// Runs the word additively and multiplicatively through a = exp(-eps^2 alpha/2),
/// f = -exp(-eps phi), and compares the pullbacks of both results.
DegenerationRow degeneration_check(const StateA2Add& x, double eps, const WeylWord& word);

/// Error between eps*log of the multiplicative map at (e^{A/eps}, e^{F/eps}) and the tropical map.
struct UdRow {
  double eps = 0;
  std::array<double, 6> error{};  // A_0..2, F_0..2
  double max_error() const;
};

/// `word` empty with `use_T` true probes the u-P_IV step instead.
std::vector<UdRow> ud_consistency_check(const WeylWord& word, bool use_T, const StateA2Trop& x,
                                        const std::vector<double>& epsilons);

}  // namespace weylp
