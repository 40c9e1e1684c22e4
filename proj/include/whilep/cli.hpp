#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace whilep {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitReject = 2;
inline constexpr int kExitUsage = 3;

// Runs the `whilep` command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace whilep
