#pragma once

// Subcommand dispatch shared by the command-line tool and the Python module.

#include <string>
#include <vector>

namespace deltaring {

struct CommandResult {
  /// 0 success, 2 validation or domain error, 3 resource limit, 1 internal error.
  int exit_code = 0;
  /// JSON (or table) text, newline-terminated.
  std::string output;
};

/// args excludes the program name, e.g. {"bass-unit", "--order", "5", "--k", "2"}.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace deltaring
