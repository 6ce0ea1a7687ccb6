#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace taylor::cli {

enum ExitCode : int {
    kOk = 0,
    kBadArguments = 2,
    kEvaluationError = 3,
    kConvergenceFailure = 4,
};

/// Runs one invocation; args excludes the program name. Structured output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace taylor::cli
