#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kappa {

/// Exit statuses of the command-line surface.
enum ExitStatus : int { exit_pass = 0, exit_usage = 1, exit_negative = 2 };

/// Parses argv (argv[0] is the program name), runs one subcommand and writes
/// the report to `out`, diagnostics to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kappa
