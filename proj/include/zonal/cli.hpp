#ifndef ZONAL_CLI_HPP
#define ZONAL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace zonal::cli {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNumericalFailure = 3,
};

// Runs the command line (args excludes the program name). Tables go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zonal::cli

#endif  // ZONAL_CLI_HPP
