#pragma once

#include <iosfwd>

namespace dimlab {

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitIo = 3, kExitInfeasible = 4 };

/// Entry point of the `dimlab` tool; writes reports to `out` and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dimlab
