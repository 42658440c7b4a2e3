#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hilbloc {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  // "violation" (a checked statement failed), "cap" (resource cap), "error"
  // (other exception) or "" when the run completed.
  std::string failure;
  std::map<std::string, std::string> facts;  // deterministic findings
  std::vector<std::string> problems;         // first few failures, deterministic
  double seconds = 0;                        // wall time, not part of the report text
};

struct AcceptanceOptions {
  uint64_t seed = 1;
  std::set<int> only;  // empty: all criteria
  // Criterion 11 reruns criteria 1..10 and compares report text; off when
  // the caller compares runs itself.
  bool rerun_for_determinism = true;
  std::function<void(const CriterionResult&)> on_result;  // called as each criterion ends
};

struct AcceptanceReport {
  uint64_t seed = 1;
  std::vector<CriterionResult> results;
  bool all_pass() const;
  // Deterministic text of everything except timings.
  std::string canonical_text() const;
};

// Criteria 1..11; see README for what each checks.
AcceptanceReport run_acceptance(const AcceptanceOptions& opt = {});
std::vector<std::pair<int, std::string>> acceptance_titles();

// Patterns covered by the flag-model criteria (3 to 5) with the number of
// equations each local model should have.
struct AcceptancePattern {
  std::string pattern;  // "4;2,2,1,1"
  size_t equations = 0;
};
std::vector<AcceptancePattern> acceptance_patterns();

}  // namespace hilbloc
