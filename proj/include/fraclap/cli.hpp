#pragma once

#include <iosfwd>

namespace fraclap::cli {

/// Exit codes of every subcommand.
enum ExitCode : int { kPass = 0, kFail = 1, kInconclusive = 2, kUsage = 3 };

/// Runs one subcommand; reports go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace fraclap::cli
