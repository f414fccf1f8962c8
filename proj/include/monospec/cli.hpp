#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace monospec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFails = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitCapExceeded = 3;

/// Runs one invocation (args exclude the program name). Writes a single JSON
/// document to `out` and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monospec::cli
