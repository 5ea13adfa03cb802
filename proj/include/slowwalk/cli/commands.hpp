#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace slowwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;        // bad flags, invalid parameters, regime violations
inline constexpr int kExitConsistency = 3;  // two computations disagree: an engine bug

// Runs one subcommand. `args` excludes the program name. Tables go to `out`
// (or to --out), notices and errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slowwalk::cli
