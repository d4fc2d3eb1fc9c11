// The acceptance criteria as runnable checks.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wa {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriteria = 11;

std::string criterion_name(int id);
// Throws std::out_of_range for ids outside 1..kCriteria. Exceptions from the
// library are caught and reported as a failure with the message as detail.
CriterionResult run_criterion(int id);
// Runs the given ids (all when empty) in order, reporting each as it finishes.
std::vector<CriterionResult> run_suite(const std::vector<int>& ids = {},
                                       const std::function<void(const CriterionResult&)>& report = {});

std::string format_result(const CriterionResult& r);  // "PASS 3 name (1.2 s): detail"

}  // namespace wa
