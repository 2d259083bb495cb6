#pragma once

// The acceptance suite: eight end-to-end checks with pinned tolerances and
// runtime budgets, shared by the test binary and `heatlevel verify-all`.

#include <cstdint>
#include <string>
#include <vector>

namespace heatlevel::acceptance {

struct CriterionInfo {
  int id = 0;
  std::string name;
  double runtime_limit = 0.0;  // seconds
};

struct CriterionResult {
  CriterionInfo info;
  bool numeric_pass = false;
  bool pass = false;
  double seconds = 0.0;
  /// One line of key=value measurements.
  std::string detail;
};

struct Options {
  /// Multiplies every upper-bound tolerance; values < 1 tighten the suite.
  double tol_scale = 1.0;
  std::uint64_t seed = 0x5eedULL;
};

std::vector<CriterionInfo> catalog();

/// Runs criterion `id` (1..8). A criterion passes when its measurements meet
/// the tolerances and it finished within its runtime budget.
CriterionResult run(int id, const Options& options = {});

std::vector<CriterionResult> run_all(const Options& options = {});

/// "PASS [n] name (1.23 s) detail"
std::string format_line(const CriterionResult& r);

}  // namespace heatlevel::acceptance
