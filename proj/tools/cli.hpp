#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eulerp::cli {

enum ExitCode : int {
  kOk = 0,
  kPrecisionNotMet = 1,
  kInputError = 2,
  kCheckFailed = 3,
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eulerp::cli
