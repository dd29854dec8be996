#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace socf::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kProbeContradiction = 1,
  kParseError = 2,
  kDimensionError = 3,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socf::cli
