#pragma once

#include <functional>
#include <string>
#include <vector>

namespace giantwg::checks {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

using Reporter = std::function<void(const CheckResult&)>;

// Runs the acceptance checks in order, calling `report` after each one.
// A check fails if its numerical condition fails or it exceeds its time budget.
std::vector<CheckResult> run_all(std::size_t workers, const Reporter& report = {});

// "PASS 01 single-leg decay | ... | 0.02 s (budget 1 s)"
std::string format_result(const CheckResult& result);

}  // namespace giantwg::checks
