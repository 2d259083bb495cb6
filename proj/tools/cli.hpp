#pragma once

// Command-line driver. Exit codes: 0 pass, 1 check failed, 2 structural or
// numerical error, 64 usage error.

#include <ostream>
#include <string>
#include <vector>

namespace heatlevel::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kStructural = 2, kUsage = 64 };

/// Runs the program with argv[0] as program name; tables go to `out` (or to
/// --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "1,2,3" or "min:max:steps" (geometric, steps >= 2). Values must be
/// positive and strictly increasing.
std::vector<double> parse_time_grid(const std::string& text);
/// Comma-separated reals.
std::vector<double> parse_list(const std::string& text);
/// "0..6", "2" or "0,2,4".
std::vector<int> parse_degrees(const std::string& text);

}  // namespace heatlevel::cli
