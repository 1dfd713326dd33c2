#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simshape::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

/// Runs the tool with `args` (without the program name). Normal output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simshape::cli
