#pragma once

#include "nonclass/app/families.hpp"
#include "nonclass/measure.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nonclass::app {

struct SweepOptions {
  std::string family;
  FamilyParams params;
  /// Grid intervals per swept axis (steps + 1 points).
  int steps = 10;
  /// Number of states for the random family.
  int samples = 10;
  OptimizerConfig optimizer;
};

/// Family parameters that become CSV columns.
std::vector<std::string> sweep_param_columns(const std::string& family);
/// family,<params>,D_formula,D_optimizer,discord,M_horodecki
std::string sweep_csv_header(const std::string& family);
/// Every family's header, one per line, for --help.
std::string sweep_columns_help();

/// Shortest round-trip decimal, '.' separator, independent of locale.
std::string format_number(double x);

struct SweepTable {
  std::string family;
  /// Settings and seeds, written as a leading "# ..." line in CSV.
  std::string provenance;
  std::vector<std::string> columns;  // without the leading "family"
  /// Empty cells are quantities that do not apply to the state.
  std::vector<std::vector<std::optional<double>>> rows;
};

/// Rows are computed in parallel and stored in grid order.
SweepTable run_sweep(const SweepOptions& options);

void write_csv(const SweepTable& table, std::ostream& out);
/// { "family", "provenance", "columns", "rows": [[...], ...] }, null for empty cells.
void write_json(const SweepTable& table, std::ostream& out);

}  // namespace nonclass::app
