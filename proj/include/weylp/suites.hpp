#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weylp/realization.hpp"
#include "weylp/report.hpp"

namespace weylp {

/// Unknown suite selector or malformed option.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Runs `fn` at `trials` random states; fn returns a failure or nullopt. Poles are retried.
template <class Fn>
CheckResult check_property(const std::string& realization, const std::string& relation, int trials,
                           std::uint64_t seed, std::uint64_t stream, Fn fn) {
  CheckResult res;
  res.realization = realization;
  res.relation = relation;
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
      try {
        slots[t].failure = fn(rng);
        return;
      } catch (const PoleError&) {
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

/// Single deterministic check from a predicate.
CheckResult check_fact(const std::string& realization, const std::string& relation, bool ok, const std::string& note,
                       Json witness = {});

VerificationReport a2_add_suite(int trials, std::uint64_t seed);
/// Relations of the multiplicative action plus qP_IV covariance, invariant and inverse.
VerificationReport a2_mul_suite(int trials, std::uint64_t seed);
/// Tropical relations plus u-P_IV covariance and the sum law.
VerificationReport a2_trop_suite(int trials, std::uint64_t seed);
VerificationReport poisson_suite(const std::string& tag, std::uint64_t seed);
/// Relations, gamma flows, time evolution, conservation and tropical relations on an M x N grid.
VerificationReport lattice_suite(int M, int N, int trials, std::uint64_t seed);
VerificationReport ode_suite();

/// Selector names covered by `all`.
std::vector<std::string> all_selectors();
/// Throws UsageError for an unknown selector.
VerificationReport run_selector(const std::string& selector, int trials, std::uint64_t seed);

struct SuiteRun {
  std::string selector;
  int trials = 100;
  std::uint64_t seed = 1;
  bool timings = false;
};

struct SuiteReport {
  SuiteRun config;
  std::vector<VerificationReport> reports;
  std::vector<double> seconds;
  bool passed() const;
  Json to_json() const;
};

SuiteReport cmd_verify(const SuiteRun& run);

}  // namespace weylp
