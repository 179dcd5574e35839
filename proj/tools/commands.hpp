#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace nonrecip::cli {

using Cell = std::variant<double, std::string>;

/// Table with unit-labelled columns, e.g. "d [m]".
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const;
  /// {"columns": [...], "rows": [[...], ...]}; numbers round-trip exactly.
  Json to_json() const;
};

struct RunOptions {
  int jobs = 1;
  std::optional<double> quad_rel_tol;
};

Dataset cmd_emission(const Json& config, const RunOptions& options);
Dataset cmd_persistent(const Json& config, const RunOptions& options);
Dataset cmd_force(const Json& config, const RunOptions& options);
Dataset cmd_bound(const Json& config, const RunOptions& options);

struct SelftestRow {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SelftestRow> run_selftest();
void print_selftest(const std::vector<SelftestRow>& rows, std::ostream& out);

}  // namespace nonrecip::cli
