#include "weylp/word.hpp"

#include <cctype>
#include <stdexcept>

namespace weylp {

GeneratorToken GeneratorToken::inverted() const {
  GeneratorToken t = *this;
  if (is_rotation()) t.inverse = !t.inverse;
  return t;
}

std::string GeneratorToken::str() const {
  switch (family) {
    case Family::s: return "s" + std::to_string(index);
    case Family::r: return "r" + std::to_string(index);
    case Family::pi: return inverse ? "pi^-1" : "pi";
    case Family::omega: return inverse ? "w^-1" : "w";
  }
  return "?";
}

GeneratorToken parse_token(std::string_view text) {
  std::string_view t = text;
  bool inv = false;
  if (t.size() > 3 && t.substr(t.size() - 3) == "^-1") {
    inv = true;
    t.remove_suffix(3);
  }
  if (t == "pi") return GeneratorToken::pi(inv);
  if (t == "w" || t == "omega") return GeneratorToken::omega(inv);
  if (t.size() >= 2 && (t[0] == 's' || t[0] == 'r')) {
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw std::invalid_argument("bad generator '" + std::string(text) + "'");
    int idx = std::stoi(std::string(t.substr(1)));
    return t[0] == 's' ? GeneratorToken::s(idx) : GeneratorToken::r(idx);
  }
  throw std::invalid_argument("bad generator '" + std::string(text) + "'");
}

WeylWord parse_word(std::string_view text) {
  WeylWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',') ++i;
    if (i > start) w.push_back(parse_token(text.substr(start, i - start)));
  }
  return w;
}

std::string format_word(const WeylWord& w) {
  std::string out;
  for (const auto& t : w) {
    if (!out.empty()) out += ' ';
    out += t.str();
  }
  return out;
}

WeylWord inverse_word(const WeylWord& w) {
  WeylWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
  return out;
}

WeylWord concat(const WeylWord& u, const WeylWord& v) {
  WeylWord out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

WeylWord power(const WeylWord& w, int n) {
  WeylWord out;
  for (int k = 0; k < n; ++k) out.insert(out.end(), w.begin(), w.end());
  return out;
}

std::vector<WeylWord> translation_words(int M, Family reflection, Family rotation, GammaReading reading) {
  if (M < 2) throw std::invalid_argument("translation words need M >= 2");
  const int top = reading == GammaReading::top_is_last ? M - 1 : M;
  std::vector<WeylWord> out;
  for (int k = 1; k <= M; ++k) {
    WeylWord g;
    for (int m = k - 1; m >= 1; --m) g.push_back({reflection, m, false});
    g.push_back({rotation, 0, false});
    for (int m = top; m >= k; --m) g.push_back({reflection, m % M, false});
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace weylp
