#pragma once

#include <string>
#include <vector>

namespace divlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values and the pinned tolerances
};

struct AcceptanceOptions {
  // quick: sieve limit and scan windows capped at 1e6 (full profile: 1e7)
  bool quick = false;
};

// Runs the eleven verification criteria end to end and reports one result
// per criterion.  Heavy: builds the k = 2 and k = 3 tables at the profile
// limit.  Honors the current worker count.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// "PASS  3  fourth-moment slope  (detail)" style lines, one per criterion.
std::string format_acceptance(const std::vector<CriterionResult>& results);

}  // namespace divlab
