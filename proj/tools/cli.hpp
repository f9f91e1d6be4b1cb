#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace divlab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2 };

/// Runs one command. `args` excludes the program name. Artifacts go to
/// --output when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divlab::cli
