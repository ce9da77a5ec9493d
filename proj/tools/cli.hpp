#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace springleg {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // usage, configuration and data errors
inline constexpr int kExitInfeasible = 3;  // stall, infeasible request, posture out of range

/// Runs one subcommand; args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace springleg
