#pragma once

namespace sepsim {

/// Entry point of the command line tool. Returns the process exit code:
/// 0 success, 1 bad input, 2 numerical failure (non-convergence or range
/// escape), 3 broken coupling/structural invariant.
int run_cli(int argc, const char* const* argv);

}  // namespace sepsim
