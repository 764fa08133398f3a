#pragma once

#include <iosfwd>

namespace slidefuse::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kDataError = 1, kUsageError = 2 };

/// Runs one `slidefuse` invocation. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slidefuse::cli
