#pragma once

#include <iosfwd>

namespace pcfdyn::cli {

/// Exit codes: 0 success, 1 usage or library error, 2 undecided results.
enum Exit : int { kOk = 0, kError = 1, kUndecided = 2 };

/// Parses argv and runs one subcommand. Output goes to `out` (or the file
/// named by --out) only once the command has succeeded; diagnostics go to
/// `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pcfdyn::cli
