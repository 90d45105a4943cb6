#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace confounder_lab::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // verify found violations
inline constexpr int kExitInput = 2;        // usage, parse or validation error
inline constexpr int kExitIo = 3;

inline constexpr unsigned long long kDefaultSeed = 1;

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confounder_lab::cli
