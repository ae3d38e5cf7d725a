#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "plasmon/fresnel.hpp"

namespace plasmon::cli {

struct CheckResult {
  std::string name;
  double max_error;
  double tolerance;
  bool passed;
};

struct ValidationOptions {
  double truncation_tolerance;
  /// Added to the ratio denominator; nonzero only for the negative control.
  double ratio_fault = 0.0;
};

/// Oracle-vs-closed-form moments and ratios over the reference state grid,
/// plus the Fresnel cross-checks on `stack`.
std::vector<CheckResult> run_validation(const KretschmannStack& stack, const ValidationOptions& options);

void print_report(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace plasmon::cli
