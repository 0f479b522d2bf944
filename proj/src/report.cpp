#include "weylp/report.hpp"

namespace weylp {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::vacuous: return "vacuous";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

void CheckResult::settle() {
  if (!failures.empty()) status = Status::fail;
  else if (status == Status::fail) status = Status::pass;
}

Json CheckResult::to_json() const {
  Json j;
  j["realization"] = realization;
  j["relation"] = relation;
  j["trials"] = trials;
  Json f = Json::array();
  // A handful of witnesses is enough to debug.
  for (std::size_t i = 0; i < failures.size() && i < 5; ++i)
    f.push_back({{"witness", failures[i].witness}, {"coordinate", failures[i].coordinate}});
  j["failures"] = f;
  j["failure_count"] = failures.size();
  j["pole_retries"] = pole_retries;
  j["status"] = weylp::to_string(status);
  if (!note.empty()) j["note"] = note;
  return j;
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::passed() const { return count(Status::fail) == 0; }

int VerificationReport::count(Status s) const {
  int n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

Json VerificationReport::to_json() const {
  Json j;
  j["name"] = name;
  j["summary"] = {{"checks", checks.size()},
                  {"pass", count(Status::pass)},
                  {"fail", count(Status::fail)},
                  {"vacuous", count(Status::vacuous)},
                  {"inconclusive", count(Status::inconclusive)}};
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  j["checks"] = arr;
  return j;
}

}  // namespace weylp
