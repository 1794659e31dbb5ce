#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with in-memory streams.

#include <ostream>
#include <string>
#include <vector>

namespace falc {

// Exit codes.
inline constexpr int kExitOk = 0;          // consistent, model found
inline constexpr int kExitNegative = 1;    // inconsistent, none within bounds
inline constexpr int kExitInputError = 2;
inline constexpr int kExitLimit = 3;

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace falc
