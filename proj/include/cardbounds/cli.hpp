#pragma once

#include <ostream>

namespace cardbounds {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,        ///< success, or every verdict consistent
    kExitUsage = 1,     ///< bad arguments, unreadable or invalid input
    kExitViolated = 2,  ///< ran to completion but a bound or verification failed
};

/// Entry point of the `cardbounds` tool, writing to the given streams.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cardbounds
