#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edgedim {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitInfeasible = 3,
    kExitValidation = 4,
};

/// Runs the tool with `args` (without the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "v1,v2,...", "lo:hi:n" (linear) or "log:lo:hi:n" (geometric).
/// Throws ConfigError on malformed input or an empty result.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace edgedim
