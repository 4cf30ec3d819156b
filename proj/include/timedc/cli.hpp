#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace timedc::cli {

enum ExitCode : int { kSuccessful = 0, kFailed = 1, kError = 2, kBoundExceeded = 3 };

// args excludes the program name. Human-readable output goes to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace timedc::cli
