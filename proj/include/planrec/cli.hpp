#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace planrec {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitValidation = 2,
  kExitInference = 3,
};

/// Parses `start:stop:steps:log|lin` into grid points. Log grids need
/// 0 < start; one step yields just `start`. Throws ParseError.
std::vector<double> parse_grid(std::string_view spec);

/// Scientific notation with six significant digits, e.g. 1.98483e-03.
std::string format_probability(double p);

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out`, diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace planrec
