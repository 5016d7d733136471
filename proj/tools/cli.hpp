#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace uavcov::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kNotConverged = 2,
};

/// Parses `args` (without the program name) and runs one command. Results
/// go to --out or `out`; diagnostics are one line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "lo:hi:count", inclusive endpoints, evenly spaced.
std::vector<double> parse_range(const std::string& text);

}  // namespace uavcov::cli
