#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radex::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kUsageError = 2;

// Runs one subcommand (trace, oracle, check, bvp). args excludes the program
// name. Artifacts go to --out when given, otherwise to `out`; diagnostics go
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radex::cli
