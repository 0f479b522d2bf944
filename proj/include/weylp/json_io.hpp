#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "weylp/a2.hpp"
#include "weylp/lattice.hpp"
#include "weylp/report.hpp"

namespace weylp {

/// Malformed input document or value.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const Json& v);
/// Accepts "p/q", "-inf" and JSON integers.
Tropical tropical_from_json(const Json& v);

/// Comma-separated rationals, e.g. "1/3,1/3,1/3". The double variant also takes "1e-3".
std::vector<Rational> parse_rational_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

StateA2Add add_state_from_json(const Json& j);
StateA2Mul mul_state_from_json(const Json& j);
StateA2Trop trop_state_from_json(const Json& j);
LatticeState lattice_from_json(const Json& j);
TropLatticeState trop_lattice_from_json(const Json& j);

/// Reads a file path, or parses the text itself when it starts with '{'.
Json load_json_arg(const std::string& arg);

}  // namespace weylp
