#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace egs {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitVerification = 3 };

/// Runs the command line `args` (program name excluded) and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egs
