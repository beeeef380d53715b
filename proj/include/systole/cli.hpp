#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace systole {

/// Exit codes of the systolab tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitClaimFailure = 1,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitResource = 4,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and one-line diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace systole
