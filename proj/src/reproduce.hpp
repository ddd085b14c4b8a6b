#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "records.hpp"

namespace qtn {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;  // must stay <= limit
  double limit = 0.0;
  std::string detail;
  double seconds = 0.0;
};

// Runs the canonical verification suite (all checks when `which` is empty).
// The randomized-profile check derives its profiles from `seed`.
std::vector<CheckResult> run_acceptance_checks(const std::vector<int>& which = {},
                                               std::uint64_t seed = 20260808ull,
                                               int jobs = 0);

Table acceptance_table(const std::vector<CheckResult>&);

}  // namespace qtn
