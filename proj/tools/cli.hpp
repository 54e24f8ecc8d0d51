#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace walklll::cli {

// Exit codes.
inline constexpr int kExitValid = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUndetermined = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitMismatch = 5;
inline constexpr int kExitFailure = 6;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace walklll::cli
