#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gqo::cli {

/// Exit codes: 0 success (a NotRepresentable verdict included), 1 internal
/// invariant violation, 2 invalid input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

/// Runs the command line `args` (without the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gqo::cli
