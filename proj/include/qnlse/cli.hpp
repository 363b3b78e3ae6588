#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qnlse {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
};

/// Runs the CLI with `args` (program name first). Reports go to `out` unless
/// --out is given; human-readable progress and errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnlse
