#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace weylp {

enum class Family { s, r, pi, omega };

/// One generator. s/r carry an index (reduced mod the family period by the
/// realization); pi/omega carry none but may be inverted.
struct GeneratorToken {
  Family family = Family::s;
  int index = 0;
  bool inverse = false;

  static GeneratorToken s(int i) { return {Family::s, i, false}; }
  static GeneratorToken r(int k) { return {Family::r, k, false}; }
  static GeneratorToken pi(bool inv = false) { return {Family::pi, 0, inv}; }
  static GeneratorToken omega(bool inv = false) { return {Family::omega, 0, inv}; }

  bool is_rotation() const { return family == Family::pi || family == Family::omega; }
  GeneratorToken inverted() const;
  std::string str() const;
  friend bool operator==(const GeneratorToken&, const GeneratorToken&) = default;
};

/// A word g1 g2 ... gn is the product of automorphisms in that order.
/// On points, g1 acts first.
using WeylWord = std::vector<GeneratorToken>;

/// Accepts "s1", "r0", "pi", "w", "omega", "pi^-1", "w^-1" separated by
/// whitespace or commas. Throws std::invalid_argument.
GeneratorToken parse_token(std::string_view text);
WeylWord parse_word(std::string_view text);
std::string format_word(const WeylWord& w);

WeylWord inverse_word(const WeylWord& w);
WeylWord concat(const WeylWord& u, const WeylWord& v);
WeylWord power(const WeylWord& w, int n);

/// Which generator plays the role of the top index in the translation words.
enum class GammaReading { top_is_last, top_is_zero };

/// gamma_k = r_{k-1} ... r_1 w r_top ... r_k for k = 1..M, with top = M-1
/// (top_is_last) or top = M read mod M as 0 (top_is_zero).
std::vector<WeylWord> translation_words(int M, Family reflection, Family rotation, GammaReading reading);

}  // namespace weylp
