#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hmatch::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kInputError = 1, kCertificate = 2 };

/// Runs one command line (without the program name). Results go to `out` or to
/// the --out file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmatch::cli
