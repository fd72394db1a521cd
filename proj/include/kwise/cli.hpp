#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kwise {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitOracleMismatch = 3,
  kExitValidatorFailure = 4,
  kExitTiling = 5,
};

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kwise
