#pragma once

#include <string>
#include <vector>

namespace circlespd::cli {

/// Batch front end.  Subcommands: decide, counterexample, gram, zeroset,
/// fit, verify.  Prints a RunReport JSON to stdout; artifacts go to --out
/// (written atomically).  Exit codes: 0 success (decide: StrictlyPD),
/// 1 decide: NotStrictlyPD, 2 malformed input, 3 unmet precondition,
/// 4 residual check failure, 5 internal error.
int run(std::vector<std::string> args);
int run(int argc, const char* const* argv);

}  // namespace circlespd::cli
