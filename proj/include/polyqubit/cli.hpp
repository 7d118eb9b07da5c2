#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyqubit::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;  // infeasible spectrum or failed check
inline constexpr int kExitInvalid = 2;    // malformed input or usage error

// Runs one command line (without the program name). Reports go to `out` as
// JSON with sorted keys; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyqubit::cli
