#include "weylp/json_io.hpp"

#include <fstream>
#include <sstream>

namespace weylp {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class S, class F>
std::array<S, 3> triple(const Json& j, const char* key, F&& conv) {
  const Json& a = field(j, key);
  if (!a.is_array() || a.size() != 3) throw InputError(std::string("\"") + key + "\" must hold 3 values");
  return {conv(a[0]), conv(a[1]), conv(a[2])};
}

template <class S, class F>
MatState<S> grid(const Json& j, const char* pk, const char* qk, const char* xk, F&& conv) {
  const Json& x = field(j, xk);
  if (!x.is_array() || x.empty() || !x[0].is_array()) throw InputError("grid must be a non-empty array of rows");
  const int M = static_cast<int>(x.size()), N = static_cast<int>(x[0].size());
  if (j.contains("M") && j.at("M").get<int>() != M) throw InputError("M does not match the grid");
  if (j.contains("N") && j.at("N").get<int>() != N) throw InputError("N does not match the grid");
  MatState<S> st(M, N, conv(field(j, pk)), conv(field(j, qk)));
  for (int i = 0; i < M; ++i) {
    if (static_cast<int>(x[i].size()) != N) throw InputError("ragged grid");
    for (int k = 0; k < N; ++k) st.x(i, k) = conv(x[i][k]);
  }
  return st;
}

}  // namespace

Rational rational_from_json(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("bad rational \"" + v.get<std::string>() + "\"");
    }
  }
  throw InputError("expected a rational string or integer, got " + v.dump());
}

Tropical tropical_from_json(const Json& v) {
  if (v.is_string() && v.get<std::string>() == "-inf") return Tropical::neg_inf();
  return Tropical(rational_from_json(v));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception&) {
      throw InputError("bad rational \"" + item + "\"");
    }
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find('/') != std::string::npos) {
      try {
        out.push_back(Rational::parse(item).to_double());
        continue;
      } catch (const std::exception&) {
        throw InputError("bad number \"" + item + "\"");
      }
    }
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw InputError("bad number \"" + item + "\"");
  }
  return out;
}

StateA2Add add_state_from_json(const Json& j) {
  StateA2Add s;
  s.alpha = triple<Rational>(j, "alpha", rational_from_json);
  s.phi = triple<Rational>(j, "phi", rational_from_json);
  if (j.contains("t")) s.t = rational_from_json(j.at("t"));
  return s;
}

StateA2Mul mul_state_from_json(const Json& j) {
  StateA2Mul s;
  s.a = triple<Rational>(j, "a", rational_from_json);
  s.f = triple<Rational>(j, "f", rational_from_json);
  if (j.contains("t")) s.t = rational_from_json(j.at("t"));
  return s;
}

StateA2Trop trop_state_from_json(const Json& j) {
  StateA2Trop s;
  s.a = triple<Tropical>(j, "A", tropical_from_json);
  s.f = triple<Tropical>(j, "F", tropical_from_json);
  if (j.contains("T")) s.t = tropical_from_json(j.at("T"));
  return s;
}

LatticeState lattice_from_json(const Json& j) { return grid<Rational>(j, "p", "q", "x", rational_from_json); }

TropLatticeState trop_lattice_from_json(const Json& j) {
  return grid<Tropical>(j, "P", "Q", "X", tropical_from_json);
}

Json load_json_arg(const std::string& arg) {
  try {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return Json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw InputError("cannot open " + arg);
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace weylp
