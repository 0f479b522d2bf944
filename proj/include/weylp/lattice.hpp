#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "weylp/rational.hpp"
#include "weylp/realization.hpp"
#include "weylp/semiring.hpp"
#include "weylp/word.hpp"

namespace weylp {

/// M x N window of the quasi-periodic array x^i_j with x^{i+M}_j = q x^i_j and
/// x^i_{j+N} = p x^i_j. Indices are 1-based and may be any integer on read.
template <class S>
struct MatState {
  using Grid = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

  int M = 0, N = 0;
  S p, q;
  Grid x;

  MatState() = default;
  MatState(int m, int n, S p_, S q_) : M(m), N(n), p(std::move(p_)), q(std::move(q_)), x(m, n) {}

  static int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

  S at(int i, int j) const {
    const int qi = floor_div(i - 1, M), pj = floor_div(j - 1, N);
    S v = x(i - 1 - qi * M, j - 1 - pj * N);
    if (qi != 0) v = v * ipow(q, qi);
    if (pj != 0) v = v * ipow(p, pj);
    return v;
  }
  void set(int i, int j, const S& v) {
    const int qi = floor_div(i - 1, M), pj = floor_div(j - 1, N);
    S w = v;
    if (qi != 0) w = w / ipow(q, qi);
    if (pj != 0) w = w / ipow(p, pj);
    x(i - 1 - qi * M, j - 1 - pj * N) = w;
  }
};

using LatticeState = MatState<Rational>;
using TropLatticeState = MatState<Tropical>;

/// Lower product limit in P and Q. `corrected` starts the first product at a=1;
/// `printed` starts it at a=0.
enum class PQForm { corrected, printed };

template <class S>
S lattice_P(const MatState<S>& st, int i, int j, PQForm form = PQForm::corrected) {
  const int lo = form == PQForm::corrected ? 1 : 0;
  S total{};
  bool first = true;
  for (int k = 1; k <= st.N; ++k) {
    S t = unit_like(st.p);
    for (int a = lo; a <= k - 1; ++a) t = t * st.at(i, j + a);
    for (int a = k + 1; a <= st.N; ++a) t = t * st.at(i + 1, j + a);
    total = first ? t : total + t;
    first = false;
  }
  return total;
}

template <class S>
S lattice_Q(const MatState<S>& st, int i, int j, PQForm form = PQForm::corrected) {
  const int lo = form == PQForm::corrected ? 1 : 0;
  S total{};
  bool first = true;
  for (int k = 1; k <= st.M; ++k) {
    S t = unit_like(st.q);
    for (int a = lo; a <= k - 1; ++a) t = t * st.at(i + a, j);
    for (int a = k + 1; a <= st.M; ++a) t = t * st.at(i + a, j + 1);
    total = first ? t : total + t;
    first = false;
  }
  return total;
}

template <class S>
std::pair<S, S> pq_polys(const MatState<S>& st, int i, int j, PQForm form = PQForm::corrected) {
  return {lattice_P(st, i, j, form), lattice_Q(st, i, j, form)};
}

/// r_k acts on rows k, k+1; s_l on columns l, l+1; w and pi shift rows and columns.
template <class S>
MatState<S> lattice_apply(const GeneratorToken& g, const MatState<S>& st, PQForm form = PQForm::corrected) {
  MatState<S> out = st;
  const int M = st.M, N = st.N;
  auto idx = [](int k, int n) {
    int r = ((k % n) + n) % n;
    return r == 0 ? n : r;
  };
  switch (g.family) {
    case Family::r: {
      const int i = idx(g.index, M);
      for (int j = 1; j <= N; ++j) {
        S P0 = lattice_P(st, i, j - 1, form), P1 = lattice_P(st, i, j, form);
        std::string n0 = "P^" + std::to_string(i) + "_" + std::to_string(j - 1);
        std::string n1 = "P^" + std::to_string(i) + "_" + std::to_string(j);
        out.set(i, j, st.p * st.at(i + 1, j) * checked_div(P0, P1, n1));
        out.set(i + 1, j, st.at(i, j) * checked_div(P1, P0, n0) / st.p);
      }
      return out;
    }
    case Family::s: {
      const int j = idx(g.index, N);
      for (int i = 1; i <= M; ++i) {
        S Q0 = lattice_Q(st, i - 1, j, form), Q1 = lattice_Q(st, i, j, form);
        std::string n0 = "Q^" + std::to_string(i - 1) + "_" + std::to_string(j);
        std::string n1 = "Q^" + std::to_string(i) + "_" + std::to_string(j);
        out.set(i, j, st.q * st.at(i, j + 1) * checked_div(Q0, Q1, n1));
        out.set(i, j + 1, st.at(i, j) * checked_div(Q1, Q0, n0) / st.q);
      }
      return out;
    }
    case Family::omega: {
      const int d = g.inverse ? -1 : 1;
      for (int i = 1; i <= M; ++i)
        for (int j = 1; j <= N; ++j) out.x(i - 1, j - 1) = st.at(i + d, j);
      return out;
    }
    case Family::pi: {
      const int d = g.inverse ? -1 : 1;
      for (int i = 1; i <= M; ++i)
        for (int j = 1; j <= N; ++j) out.x(i - 1, j - 1) = st.at(i, j + d);
      return out;
    }
  }
  throw std::logic_error("bad generator family");
}

template <class S>
MatState<S> lattice_apply_word(const WeylWord& w, MatState<S> st, PQForm form = PQForm::corrected) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    try {
      st = lattice_apply(w[k], st, form);
    } catch (const PoleError& e) {
      throw PoleError("step " + std::to_string(k) + " (" + w[k].str() + "): " + e.where());
    }
  }
  return st;
}

Json lattice_to_json(const LatticeState& st);
Json lattice_to_json(const TropLatticeState& st);

struct LatticeOptions {
  PQForm form = PQForm::corrected;
  /// Fix p = 1 in sampled states (the q-Painleve regime).
  bool unit_p = false;
};

Realization<LatticeState> make_lattice_realization(int M, int N, LatticeOptions opts = {});
Realization<TropLatticeState> make_trop_lattice_realization(int M, int N);

/// All relations of both families plus cross commutation.
VerificationReport verify_product_group(int M, int N, int trials, std::uint64_t seed, LatticeOptions opts = {});

std::vector<WeylWord> lattice_gammas(int M, GammaReading reading = GammaReading::top_is_last);

/// Grid plus time variables t_1..t_M; requires p = 1.
struct QPSystemState {
  LatticeState x;
  std::vector<Rational> t;
};

/// T_k: apply gamma_k^{-1} to the grid and multiply t_k by q.
QPSystemState qpainleve_step(const QPSystemState& st, int k, GammaReading reading = GammaReading::top_is_last);

/// u^{(m)}_j, m = 1..M, reconstructed from the grid.
std::vector<Rational> zs_u(const QPSystemState& st, int m, GammaReading reading = GammaReading::top_is_last);

/// B_m(z) = diag(u^{(m)}) + t_m Lambda(z).
Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> zs_B(const QPSystemState& st, int m, const Rational& z,
                                                             GammaReading reading = GammaReading::top_is_last);

/// Checks T_n(B_m) B_n = T_m(B_n) B_m at the z samples, and homogeneity T_1...T_M(u) = u.
VerificationReport zs_oracle(const QPSystemState& st, const std::vector<Rational>& zs,
                             GammaReading reading = GammaReading::top_is_last);

/// Tropical gamma_k at P = Q = 0.
TropLatticeState boxball_step(const TropLatticeState& X, int k);

/// max over coordinates of |eps log(classical map at e^{X/eps}) - tropical map|, per eps.
std::vector<double> lattice_ud_probe(const WeylWord& w, const TropLatticeState& X, const std::vector<double>& epsilons);

}  // namespace weylp
