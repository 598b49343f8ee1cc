#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace prefgraph::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kParse = 2,
  kCompatibility = 3,
  kCapability = 4,
  kNumeric = 5,
  kIo = 6,
};

/// Runs one invocation. `args` excludes the program name. Machine output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prefgraph::cli
