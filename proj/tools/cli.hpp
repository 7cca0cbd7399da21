#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace juniward::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kIoError = 2 };

/// Runs one command line (without the program name). Output goes to out,
/// diagnostics and usage text to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace juniward::cli
