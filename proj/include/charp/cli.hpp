#pragma once

#include <functional>
#include <string>
#include <vector>

namespace charp {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitRejected = 1, kExitInputError = 2, kExitInternal = 3 };

struct CliResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs the command-line tool on args (without the program name). stdin is
/// only consulted when --stdin is given. The soft cap on p is read from the
/// CHARP_MAX_P environment variable (default 31).
CliResult run_cli(const std::vector<std::string>& args,
                  const std::function<std::string()>& read_stdin = [] { return std::string(); });

/// Subcommand names, for coverage checks.
const std::vector<std::string>& cli_subcommands();

}  // namespace charp
