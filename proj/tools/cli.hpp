#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ahi::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kIoFailure = 3 };

/// Runs the command line; args excludes the program name. The report goes
/// to `out` when --out is "-", diagnostics always go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ahi::cli
