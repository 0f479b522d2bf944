#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weylp/cartan.hpp"
#include "weylp/parallel.hpp"
#include "weylp/report.hpp"
#include "weylp/sampling.hpp"
#include "weylp/semiring.hpp"
#include "weylp/word.hpp"

namespace weylp {

/// A reflection family with its Cartan data and optional rotation generator.
struct GeneratorFamily {
  Family reflection = Family::s;
  CartanData cartan;
  std::optional<Family> rotation;
};

/// Assignment of a state transformer to every generator token.
template <class State>
struct Realization {
  std::string name;
  std::vector<GeneratorFamily> families;
  std::function<State(const GeneratorToken&, const State&)> apply;
  std::function<State(Sampler&)> sample;
  /// Name of the first coordinate where the states differ, or nullopt.
  std::function<std::optional<std::string>(const State&, const State&)> differ;
  std::function<Json(const State&)> to_json;

  const GeneratorFamily* family_of(Family f) const {
    for (const auto& fam : families)
      if (fam.reflection == f || (fam.rotation && *fam.rotation == f)) return &fam;
    return nullptr;
  }
};

/// Applies the tokens left to right. A pole is rethrown naming the step.
template <class State>
State apply_word(const Realization<State>& r, const WeylWord& w, State x) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    try {
      x = r.apply(w[k], x);
    } catch (const PoleError& e) {
      throw PoleError("step " + std::to_string(k) + " (" + w[k].str() + "): " + e.where());
    }
  }
  return x;
}

/// Two words claimed equal as group elements.
struct Relation {
  std::string label;
  WeylWord lhs;
  WeylWord rhs;
};

/// Compares lhs and rhs at `trials` random states, retrying on poles.
template <class State>
CheckResult check_relation(const Realization<State>& r, const Relation& rel, int trials, std::uint64_t seed,
                           std::uint64_t stream) {
  CheckResult res;
  res.realization = r.name;
  res.relation = rel.label;
  res.trials = trials;
  struct Slot {
    std::optional<Failure> failure;
    int retries = 0;
    bool exhausted = false;
  };
  std::vector<Slot> slots(trials);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    Sampler rng(seed, stream * 1000003ULL + t);
    for (int attempt = 0; attempt <= kPoleRetries; ++attempt) {
      State x = r.sample(rng);
      try {
        State a = apply_word(r, rel.lhs, x);
        State b = apply_word(r, rel.rhs, x);
        if (auto c = r.differ(a, b)) slots[t].failure = Failure{r.to_json(x), *c};
        return;
      } catch (const PoleError&) {
        ++slots[t].retries;
      } catch (const DivisionByZero&) {
        ++slots[t].retries;
      }
    }
    slots[t].exhausted = true;
  });
  bool exhausted = false;
  for (auto& s : slots) {
    res.pole_retries += s.retries;
    if (s.failure) res.failures.push_back(std::move(*s.failure));
    exhausted = exhausted || s.exhausted;
  }
  res.settle();
  if (exhausted && res.failures.empty()) {
    res.status = Status::inconclusive;
    res.note = "pole retries exhausted";
  }
  return res;
}

/// All relations implied by the declared families: involutions, braids,
/// rotation intertwining, and commutation across families.
template <class State>
std::vector<Relation> implied_relations(const Realization<State>& r) {
  std::vector<Relation> out;
  for (const auto& fam : r.families) {
    const auto& c = fam.cartan;
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
      GeneratorToken g{fam.reflection, i, false};
      out.push_back({g.str() + "^2", {g, g}, {}});
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        int m = c.coxeter(i, j);
        if (m == CartanData::kInfinite) continue;
        GeneratorToken gi{fam.reflection, i, false}, gj{fam.reflection, j, false};
        out.push_back({"(" + gi.str() + " " + gj.str() + ")^" + std::to_string(m), power({gi, gj}, m), {}});
      }
    }
    if (fam.rotation && c.has_rotation()) {
      GeneratorToken rot{*fam.rotation, 0, false};
      for (int i = 0; i < n; ++i) {
        GeneratorToken gi{fam.reflection, i, false}, gj{fam.reflection, c.rotation[i], false};
        out.push_back({rot.str() + " " + gi.str() + " = " + gj.str() + " " + rot.str(), {rot, gi}, {gj, rot}});
      }
    }
  }
  for (std::size_t a = 0; a < r.families.size(); ++a) {
    for (std::size_t b = a + 1; b < r.families.size(); ++b) {
      auto gens = [](const GeneratorFamily& f) {
        WeylWord g;
        for (int i = 0; i < f.cartan.size(); ++i) g.push_back({f.reflection, i, false});
        if (f.rotation) g.push_back({*f.rotation, 0, false});
        return g;
      };
      for (const auto& g : gens(r.families[a]))
        for (const auto& h : gens(r.families[b]))
          out.push_back({g.str() + " " + h.str() + " = " + h.str() + " " + g.str(), {g, h}, {h, g}});
    }
  }
  return out;
}

/// For m_ij infinite: (s_i s_j)^k must differ from the identity for k <= 6.
template <class State>
CheckResult check_infinite_order(const Realization<State>& r, const GeneratorFamily& fam, int i, int j,
                                 std::uint64_t seed) {
  CheckResult res;
  GeneratorToken gi{fam.reflection, i, false}, gj{fam.reflection, j, false};
  res.realization = r.name;
  res.relation = "(" + gi.str() + " " + gj.str() + ")^k != 1, k<=6";
  res.trials = 1;
  Sampler rng(seed, 0xfeedULL + static_cast<std::uint64_t>(i * 31 + j));
  for (int attempt = 0; attempt <= kPoleRetries; ++attempt) {
    State x = r.sample(rng);
    try {
      State y = x;
      for (int k = 1; k <= 6; ++k) {
        y = apply_word(r, {gi, gj}, y);
        if (!r.differ(x, y)) res.failures.push_back({r.to_json(x), "k=" + std::to_string(k)});
      }
      res.settle();
      return res;
    } catch (const PoleError&) {
      ++res.pole_retries;
    }
  }
  res.status = Status::inconclusive;
  return res;
}

template <class State>
VerificationReport verify_relations(const Realization<State>& r, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  VerificationReport rep;
  rep.name = r.name;
  auto rels = implied_relations(r);
  for (std::size_t k = 0; k < rels.size(); ++k) rep.add(check_relation(r, rels[k], trials, seed, k));
  for (const auto& fam : r.families) {
    for (int i = 0; i < fam.cartan.size(); ++i)
      for (int j = i + 1; j < fam.cartan.size(); ++j)
        if (fam.cartan.coxeter(i, j) == CartanData::kInfinite) rep.add(check_infinite_order(r, fam, i, j, seed));
  }
  return rep;
}

/// Smallest k in [1, max_k] with g^k = id at a random state, or 0 if none.
template <class State>
int rotation_order_probe(const Realization<State>& r, const GeneratorToken& g, int max_k, std::uint64_t seed) {
  Sampler rng(seed, 0x707ULL);
  State x = r.sample(rng);
  State y = x;
  for (int k = 1; k <= max_k; ++k) {
    y = r.apply(g, y);
    if (!r.differ(x, y)) return k;
  }
  return 0;
}

/// Pairwise commutation of the given words.
template <class State>
VerificationReport verify_commuting_flows(const Realization<State>& r, const std::vector<WeylWord>& words, int trials,
                                          std::uint64_t seed) {
  if (words.empty()) throw std::invalid_argument("verify_commuting_flows needs at least one word");
  VerificationReport rep;
  rep.name = r.name + " commuting flows";
  if (words.size() == 1) {
    CheckResult c;
    c.realization = r.name;
    c.relation = "single word";
    c.status = Status::vacuous;
    rep.add(c);
    return rep;
  }
  std::uint64_t stream = 5000;
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      Relation rel{"[" + format_word(words[a]) + "] [" + format_word(words[b]) + "] commute", concat(words[a], words[b]),
                   concat(words[b], words[a])};
      rep.add(check_relation(r, rel, trials, seed, stream++));
    }
  return rep;
}

}  // namespace weylp
