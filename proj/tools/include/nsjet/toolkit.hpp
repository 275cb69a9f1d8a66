#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsjet {

// Exit codes of the command-line toolkit.
inline constexpr int kExitPass = 0;
inline constexpr int kExitResidual = 1;
inline constexpr int kExitUsage = 2;

// Runs one toolkit invocation. args excludes the program name. Inputs named
// "-" (or omitted) are read from in.
int run_toolkit(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nsjet
