#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cy3::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,        // at least one valid certificate / all checks pass
  kNoSolution = 1,     // clean run without certificates, or a failed check
  kInputError = 2,
  kValidationError = 3,
};

/// Runs `cy3 <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cy3::cli
