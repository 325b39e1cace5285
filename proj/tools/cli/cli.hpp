#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcube::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;     // check failure or I/O error
inline constexpr int kUsage = 2;
inline constexpr int kInfeasible = 3;

// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcube::cli
