#include "weylp/a2.hpp"

#include <algorithm>
#include <cmath>

namespace weylp {

namespace {

Json rational_array(const std::array<Rational, 3>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Json tropical_value(const Tropical& x) {
  if (x.is_neg_inf()) return "-inf";
  const Rational& v = x.value();
  if (v.fits_long()) return v.numerator().get_si();
  return v.str();
}

Json tropical_array(const std::array<Tropical, 3>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(tropical_value(x));
  return a;
}

template <class S>
std::optional<std::string> differ3(const std::array<S, 3>& x, const std::array<S, 3>& y, const std::string& name) {
  for (int j = 0; j < 3; ++j)
    if (!(x[j] == y[j])) return name + "_" + std::to_string(j);
  return std::nullopt;
}

Rational signed_small(Sampler& rng) { return Rational(rng.uniform(-60, 60), rng.uniform(1, 6)); }

}  // namespace

Json state_to_json(const StateA2Add& x) {
  Json j;
  j["type"] = "a2-add";
  j["alpha"] = rational_array(x.alpha);
  j["phi"] = rational_array(x.phi);
  if (x.t) j["t"] = x.t->str();
  return j;
}

Json state_to_json(const StateA2Mul& x) {
  Json j;
  j["type"] = "a2-mul";
  j["a"] = rational_array(x.a);
  j["f"] = rational_array(x.f);
  if (x.t) j["t"] = x.t->str();
  return j;
}

Json state_to_json(const StateA2Trop& x) {
  Json j;
  j["type"] = "a2-trop";
  j["A"] = tropical_array(x.a);
  j["F"] = tropical_array(x.f);
  if (x.t) j["T"] = tropical_value(*x.t);
  return j;
}

Realization<StateA2Add> make_add_realization(const CartanData& c) {
  Realization<StateA2Add> r;
  r.name = "a2-add";
  r.families.push_back({Family::s, c, Family::pi});
  r.apply = [c](const GeneratorToken& g, const StateA2Add& x) { return add_apply(g, x, c); };
  r.sample = [](Sampler& rng) {
    StateA2Add x;
    for (int j = 0; j < 3; ++j) {
      x.alpha[j] = rng.positive();
      x.phi[j] = rng.positive();
    }
    return x;
  };
  r.differ = [](const StateA2Add& x, const StateA2Add& y) -> std::optional<std::string> {
    if (auto d = differ3(x.alpha, y.alpha, "alpha")) return d;
    return differ3(x.phi, y.phi, "phi");
  };
  r.to_json = [](const StateA2Add& x) { return state_to_json(x); };
  return r;
}

Realization<StateA2Mul> make_mul_realization(MulDenominator den) {
  Realization<StateA2Mul> r;
  r.name = den == MulDenominator::own ? "a2-mul" : "a2-mul (1+a_i f_j denominator)";
  r.families.push_back({Family::s, a2_cartan(), Family::pi});
  r.apply = [den](const GeneratorToken& g, const StateA2Mul& x) { return mul_apply(g, x, den); };
  r.sample = [](Sampler& rng) {
    StateA2Mul x;
    for (int j = 0; j < 3; ++j) {
      x.a[j] = rng.positive();
      x.f[j] = rng.positive();
    }
    return x;
  };
  r.differ = [](const StateA2Mul& x, const StateA2Mul& y) -> std::optional<std::string> {
    if (auto d = differ3(x.a, y.a, "a")) return d;
    return differ3(x.f, y.f, "f");
  };
  r.to_json = [](const StateA2Mul& x) { return state_to_json(x); };
  return r;
}

Realization<StateA2Trop> make_trop_realization() {
  Realization<StateA2Trop> r;
  r.name = "a2-trop";
  r.families.push_back({Family::s, a2_cartan(), Family::pi});
  r.apply = [](const GeneratorToken& g, const StateA2Trop& x) { return trop_apply(g, x); };
  r.sample = [](Sampler& rng) {
    StateA2Trop x;
    for (int j = 0; j < 3; ++j) {
      x.a[j] = Tropical(signed_small(rng));
      x.f[j] = Tropical(signed_small(rng));
    }
    return x;
  };
  r.differ = [](const StateA2Trop& x, const StateA2Trop& y) -> std::optional<std::string> {
    if (auto d = differ3(x.a, y.a, "A")) return d;
    return differ3(x.f, y.f, "F");
  };
  r.to_json = [](const StateA2Trop& x) { return state_to_json(x); };
  return r;
}

double DegenerationRow::max_error() const { return *std::max_element(error.begin(), error.end()); }
double UdRow::max_error() const { return *std::max_element(error.begin(), error.end()); }

DegenerationRow degeneration_check(const StateA2Add& x, double eps, const WeylWord& word) {
  if (!(eps > 0 && eps <= 0.1)) throw std::invalid_argument("degeneration eps must lie in (0, 0.1]");
  for (const auto& g : word)
    if (g.family != Family::s && g.family != Family::pi)
      throw std::invalid_argument("degeneration words use only s_i and pi");
  DegenerationRow row;
  row.eps = eps;
  AddState<double> add;
  MulState<double> mul;
  for (int j = 0; j < 3; ++j) {
    add.alpha[j] = x.alpha[j].to_double();
    add.phi[j] = x.phi[j].to_double();
    mul.a[j] = std::exp(-eps * eps * add.alpha[j] / 2);
    mul.f[j] = -std::exp(-eps * add.phi[j]);
  }
  try {
    for (const auto& g : word) {
      add = add_apply(g, add);
      mul = mul_apply(g, mul);
    }
  } catch (const PoleError&) {
    row.pole = true;
    return row;
  }
  for (int j = 0; j < 3; ++j) {
    if (!(mul.f[j] < 0) || !(mul.a[j] > 0)) {
      row.pole = true;
      return row;
    }
    auto alpha_of = [eps](double a) { return -2 * std::log(a) / (eps * eps); };
    auto phi_of = [eps](double f) { return -std::log(-f) / eps; };
    row.error[j] = std::abs(alpha_of(mul.a[j]) - alpha_of(std::exp(-eps * eps * add.alpha[j] / 2)));
    row.error[3 + j] = std::abs(phi_of(mul.f[j]) - phi_of(-std::exp(-eps * add.phi[j])));
  }
  return row;
}

std::vector<UdRow> ud_consistency_check(const WeylWord& word, bool use_T, const StateA2Trop& x,
                                        const std::vector<double>& epsilons) {
  StateA2Trop trop = x;
  for (const auto& g : word) trop = trop_apply(g, trop);
  if (use_T) trop = up4_step(trop);
  std::vector<UdRow> rows;
  for (double eps : epsilons) {
    if (!(eps > 0)) throw std::invalid_argument("epsilon must be positive");
    MulState<LogScaled> m;
    for (int j = 0; j < 3; ++j) {
      m.a[j] = LogScaled(x.a[j].to_double(), eps);
      m.f[j] = LogScaled(x.f[j].to_double(), eps);
    }
    for (const auto& g : word) m = mul_apply(g, m);
    if (use_T) m = qp4_forward(m);
    UdRow row;
    row.eps = eps;
    for (int j = 0; j < 3; ++j) {
      row.error[j] = std::abs(m.a[j].log_value() - trop.a[j].to_double());
      row.error[3 + j] = std::abs(m.f[j].log_value() - trop.f[j].to_double());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace weylp
