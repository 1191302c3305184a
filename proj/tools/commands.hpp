#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gapbench::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kUsage = 2,
  kNumerical = 3,
};

/// Runs one gapbench invocation. `args` excludes the program name. Tables
/// and summaries go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapbench::cli
