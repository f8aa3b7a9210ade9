#pragma once

// Acceptance suites shared by the CLI `bench` command and the acceptance
// binary. Each suite checks one criterion and reports a verdict, a one-line
// detail and its wall time.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "routesort/generators.hpp"

namespace routesort {

/// Depth constant c in depth <= c * min(Delta^2 n, n^2) for tree networks.
inline constexpr double kTreeSortDepthConstant = 8.0;

struct HarnessOptions {
  std::uint64_t seed = kDefaultSeed;
  double budget_secs = 0;  // per suite; 0 means unlimited
};

struct CriterionResult {
  int id = 0;
  std::string suite;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Suite names in criterion order (criterion k is entry k-1).
const std::vector<std::string>& suite_names();
/// 1-based criterion id for a suite name.
std::optional<int> suite_id(std::string_view name);

/// Throws std::out_of_range for an unknown id.
CriterionResult run_criterion(int id, const HarnessOptions& opts = {});
std::vector<CriterionResult> run_all_criteria(const HarnessOptions& opts = {});

/// "PASS  <id> <suite> (<seconds> s) <detail>".
std::string format_result(const CriterionResult& r);

}  // namespace routesort
