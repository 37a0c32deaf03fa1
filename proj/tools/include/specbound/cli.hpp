#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace specbound::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBracketViolation = 3;
inline constexpr int kExitBudgetTruncated = 4;

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Built-in closed-form checks; prints one PASS/FAIL line each and returns
/// kExitOk when all pass.
int run_demo(std::ostream& out);

}  // namespace specbound::cli
