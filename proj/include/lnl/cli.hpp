#pragma once

#include <string>
#include <vector>

namespace lnl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // property or convergence failure
inline constexpr int kExitUsage = 2;    // usage, configuration or output error

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args);

}  // namespace lnl::cli
