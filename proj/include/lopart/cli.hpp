#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lopart::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kInputError = 3,
  kCapExceeded = 4,
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out` unless --out redirects it; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lopart::cli
