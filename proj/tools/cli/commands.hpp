#pragma once

#include <ostream>

namespace poltyrev::cli {

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Entry point of the `poltyrev` tool; rows go to `out` (or --out), diagnostics
/// to `err` as a single line "poltyrev: error: <kind>: <message>".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace poltyrev::cli
