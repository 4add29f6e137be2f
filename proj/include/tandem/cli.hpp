#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tandem::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kResource = 2 };

/// Runs one subcommand. `args` excludes the program name. Primary output
/// goes to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names of all subcommands, in help order.
const std::vector<std::string>& subcommands();

}  // namespace tandem::cli
