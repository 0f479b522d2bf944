#include "weylp/lattice.hpp"

#include <cmath>

namespace weylp {

namespace {

template <class S, class F>
Json grid_json(const MatState<S>& st, F&& cell) {
  Json rows = Json::array();
  for (int i = 0; i < st.M; ++i) {
    Json row = Json::array();
    for (int j = 0; j < st.N; ++j) row.push_back(cell(st.x(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json trop_cell(const Tropical& v) {
  if (v.is_neg_inf()) return "-inf";
  if (v.value().fits_long()) return v.value().numerator().get_si();
  return v.value().str();
}

template <class S>
std::optional<std::string> grid_differ(const MatState<S>& a, const MatState<S>& b) {
  for (int i = 0; i < a.M; ++i)
    for (int j = 0; j < a.N; ++j)
      if (!(a.x(i, j) == b.x(i, j))) return "x^" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  return std::nullopt;
}

void check_shape(int M, int N) {
  if (M < 2 || N < 2) throw std::invalid_argument("lattice needs M, N >= 2");
}

}  // namespace

Json lattice_to_json(const LatticeState& st) {
  Json j;
  j["M"] = st.M;
  j["N"] = st.N;
  j["p"] = st.p.str();
  j["q"] = st.q.str();
  j["x"] = grid_json(st, [](const Rational& v) { return Json(v.str()); });
  return j;
}

Json lattice_to_json(const TropLatticeState& st) {
  Json j;
  j["M"] = st.M;
  j["N"] = st.N;
  j["P"] = trop_cell(st.p);
  j["Q"] = trop_cell(st.q);
  j["X"] = grid_json(st, trop_cell);
  return j;
}

Realization<LatticeState> make_lattice_realization(int M, int N, LatticeOptions opts) {
  check_shape(M, N);
  Realization<LatticeState> r;
  r.name = "mn:" + std::to_string(M) + "x" + std::to_string(N);
  if (opts.form == PQForm::printed) r.name += " (printed P/Q)";
  r.families.push_back({Family::r, CartanData::affine_A(M - 1), Family::omega});
  r.families.push_back({Family::s, CartanData::affine_A(N - 1), Family::pi});
  r.apply = [form = opts.form](const GeneratorToken& g, const LatticeState& x) { return lattice_apply(g, x, form); };
  r.sample = [M, N, unit_p = opts.unit_p](Sampler& rng) {
    LatticeState st(M, N, unit_p ? Rational(1) : rng.small_positive(30), rng.small_positive(30));
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < N; ++j) st.x(i, j) = rng.small_positive(100);
    return st;
  };
  r.differ = [](const LatticeState& a, const LatticeState& b) { return grid_differ(a, b); };
  r.to_json = [](const LatticeState& st) { return lattice_to_json(st); };
  return r;
}

Realization<TropLatticeState> make_trop_lattice_realization(int M, int N) {
  check_shape(M, N);
  Realization<TropLatticeState> r;
  r.name = "mn-trop:" + std::to_string(M) + "x" + std::to_string(N);
  r.families.push_back({Family::r, CartanData::affine_A(M - 1), Family::omega});
  r.families.push_back({Family::s, CartanData::affine_A(N - 1), Family::pi});
  r.apply = [](const GeneratorToken& g, const TropLatticeState& x) { return lattice_apply(g, x); };
  r.sample = [M, N](Sampler& rng) {
    auto v = [&] { return Tropical(Rational(rng.uniform(-40, 40), rng.uniform(1, 4))); };
    TropLatticeState st(M, N, v(), v());
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < N; ++j) st.x(i, j) = v();
    return st;
  };
  r.differ = [](const TropLatticeState& a, const TropLatticeState& b) { return grid_differ(a, b); };
  r.to_json = [](const TropLatticeState& st) { return lattice_to_json(st); };
  return r;
}

VerificationReport verify_product_group(int M, int N, int trials, std::uint64_t seed, LatticeOptions opts) {
  return verify_relations(make_lattice_realization(M, N, opts), trials, seed);
}

std::vector<WeylWord> lattice_gammas(int M, GammaReading reading) {
  return translation_words(M, Family::r, Family::omega, reading);
}

QPSystemState qpainleve_step(const QPSystemState& st, int k, GammaReading reading) {
  const int M = st.x.M;
  if (st.x.p != Rational(1)) throw std::invalid_argument("q-Painleve evolution requires p = 1");
  if (k < 1 || k > M) throw std::out_of_range("time index out of range");
  if (static_cast<int>(st.t.size()) != M) throw std::invalid_argument("need M time variables");
  QPSystemState out = st;
  out.x = lattice_apply_word(inverse_word(lattice_gammas(M, reading)[k - 1]), st.x);
  out.t[k - 1] = st.t[k - 1] * st.x.q;
  return out;
}

std::vector<Rational> zs_u(const QPSystemState& st, int m, GammaReading reading) {
  const int M = st.x.M;
  auto gam = lattice_gammas(M, reading);
  LatticeState y = st.x;
  for (int k = m + 1; k <= M; ++k) y = lattice_apply_word(gam[k - 1], y);
  std::vector<Rational> u(st.x.N);
  for (int j = 1; j <= st.x.N; ++j) u[j - 1] = st.t[m - 1] * y.at(m, j);
  return u;
}

Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> zs_B(const QPSystemState& st, int m, const Rational& z,
                                                             GammaReading reading) {
  const int N = st.x.N;
  auto u = zs_u(st, m, reading);
  Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> B =
      Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>::Constant(N, N, Rational(0));
  for (int i = 0; i < N; ++i) B(i, i) = u[i];
  const Rational& tm = st.t[m - 1];
  for (int i = 0; i + 1 < N; ++i) B(i, i + 1) = tm;
  B(N - 1, 0) = B(N - 1, 0) + z * tm;
  return B;
}

VerificationReport zs_oracle(const QPSystemState& st, const std::vector<Rational>& zs, GammaReading reading) {
  const int M = st.x.M;
  if (M < 2) throw std::invalid_argument("zs_oracle needs M >= 2");
  VerificationReport rep;
  rep.name = "zs:" + std::to_string(M) + "x" + std::to_string(st.x.N);
  std::vector<QPSystemState> stepped;
  for (int k = 1; k <= M; ++k) stepped.push_back(qpainleve_step(st, k, reading));

  CheckResult zc;
  zc.realization = rep.name;
  zc.relation = "T_n(B_m) B_n = T_m(B_n) B_m";
  zc.trials = static_cast<int>(zs.size());
  for (const auto& z : zs) {
    for (int m = 1; m <= M; ++m) {
      for (int n = m + 1; n <= M; ++n) {
        auto lhs = (zs_B(stepped[n - 1], m, z, reading) * zs_B(st, n, z, reading)).eval();
        auto rhs = (zs_B(stepped[m - 1], n, z, reading) * zs_B(st, m, z, reading)).eval();
        for (int a = 0; a < lhs.rows(); ++a)
          for (int b = 0; b < lhs.cols(); ++b)
            if (lhs(a, b) != rhs(a, b)) {
              zc.failures.push_back({Json{{"z", z.str()}, {"m", m}, {"n", n}, {"residual", (lhs(a, b) - rhs(a, b)).str()}},
                                     "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")"});
              a = static_cast<int>(lhs.rows());
              break;
            }
      }
    }
  }
  zc.settle();
  rep.add(zc);

  CheckResult hom;
  hom.realization = rep.name;
  hom.relation = "T_1 ... T_M (u) = u";
  hom.trials = 1;
  QPSystemState all = st;
  for (int k = 1; k <= M; ++k) all = qpainleve_step(all, k, reading);
  for (int m = 1; m <= M; ++m) {
    auto a = zs_u(all, m, reading), b = zs_u(st, m, reading);
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j] != b[j]) {
        hom.failures.push_back({lattice_to_json(st.x), "u^(" + std::to_string(m) + ")_" + std::to_string(j + 1)});
        break;
      }
  }
  hom.settle();
  rep.add(hom);
  return rep;
}

TropLatticeState boxball_step(const TropLatticeState& X, int k) {
  if (!(X.p == Tropical(0)) || !(X.q == Tropical(0))) throw std::invalid_argument("box-ball step needs P = Q = 0");
  return lattice_apply_word(lattice_gammas(X.M)[k - 1], X);
}

std::vector<double> lattice_ud_probe(const WeylWord& w, const TropLatticeState& X, const std::vector<double>& epsilons) {
  TropLatticeState T = lattice_apply_word(w, X);
  std::vector<double> out;
  for (double eps : epsilons) {
    MatState<LogScaled> L(X.M, X.N, LogScaled(X.p.to_double(), eps), LogScaled(X.q.to_double(), eps));
    for (int i = 0; i < X.M; ++i)
      for (int j = 0; j < X.N; ++j) L.x(i, j) = LogScaled(X.x(i, j).to_double(), eps);
    L = lattice_apply_word(w, L);
    double err = 0;
    for (int i = 0; i < X.M; ++i)
      for (int j = 0; j < X.N; ++j) err = std::max(err, std::abs(L.x(i, j).log_value() - T.x(i, j).to_double()));
    out.push_back(err);
  }
  return out;
}

}  // namespace weylp
