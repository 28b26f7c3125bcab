#pragma once

#include <string>
#include <vector>

namespace dkp {

struct CriterionResult {
  std::string id;
  std::string title;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Shifts every Heun-branch energy by -perturb * M before the polynomial-condition check.
  double perturb = 0.0;
};

struct CriterionInfo {
  std::string id;
  std::string title;
};

std::vector<CriterionInfo> list_criteria();
/// Throws std::invalid_argument for an unknown id.
CriterionResult run_criterion(const std::string& id, const VerifyOptions& options = {});
std::vector<CriterionResult> run_all_criteria(const VerifyOptions& options = {});

}  // namespace dkp
