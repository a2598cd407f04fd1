#pragma once

#include <ostream>

namespace frobsub {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitParse = 2, kExitHypothesis = 3, kExitConvergence = 4 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frobsub
