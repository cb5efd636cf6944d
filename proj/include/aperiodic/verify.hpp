#pragma once

#include <string>
#include <vector>

namespace aperiodic {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;  // measured numbers, for the report
};

/// Runs the cross-module invariant suite. `quick` restricts to the subset
/// that completes in well under a minute.
std::vector<CheckResult> run_verify(bool quick);

}  // namespace aperiodic
