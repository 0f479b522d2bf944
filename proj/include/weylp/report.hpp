#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace weylp {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, vacuous, inconclusive };
std::string to_string(Status s);

struct Failure {
  Json witness;
  std::string coordinate;
};

/// Outcome of one relation or identity, over `trials` random or symbolic instances.
struct CheckResult {
  std::string realization;
  std::string relation;
  int trials = 0;
  std::vector<Failure> failures;
  int pole_retries = 0;
  Status status = Status::pass;
  std::string note;

  /// pass/fail from the failure list, unless already vacuous or inconclusive.
  void settle();
  Json to_json() const;
};

struct VerificationReport {
  std::string name;
  std::vector<CheckResult> checks;

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void merge(const VerificationReport& other);
  /// True iff no check has status fail.
  bool passed() const;
  int count(Status s) const;
  Json to_json() const;
};

}  // namespace weylp
