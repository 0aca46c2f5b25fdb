#pragma once

#include "nonclass/measure.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace nonclass::app {

struct ReproduceOptions {
  /// Substring matched against criterion keys; empty runs everything.
  std::string filter;
  /// Multiplies every tolerance. 0 turns the suite into a harness self-test
  /// that must fail.
  double tolerance_scale = 1.0;
  OptimizerConfig optimizer;
  /// Print measured/expected/tol lines for passing criteria too.
  bool details = true;
};

struct CheckLine {
  std::string what;
  double measured = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int number = 0;
  std::string key;
  std::string title;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0 means no budget
  std::vector<CheckLine> checks;
  bool pass = false;
};

struct ReproduceSummary {
  std::vector<CriterionResult> results;
  double seconds = 0.0;
  bool all_passed() const;
};

struct CriterionInfo {
  int number;
  std::string key;
  std::string title;
};

const std::vector<CriterionInfo>& criteria();

/// Runs the selected criteria, printing one PASS/FAIL line each.
ReproduceSummary run_reproduce(const ReproduceOptions& options, std::ostream& out);

}  // namespace nonclass::app
