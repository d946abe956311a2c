#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace bsingular {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitIo = 3 };

/// Worker count: the explicit flag, else BSINGULAR_THREADS, else the
/// configured value. Anything below 1 becomes 1.
int resolve_threads(std::optional<int> flag, int configured);

/// Entry point of the `bsingular` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bsingular
