#pragma once
// Command-line frontend: JSON config + flag overrides, dispatch to the
// solvers, CSV/JSON emission.  Exit codes: 0 success, 2 validation error,
// 3 solver non-convergence, 4 inconclusive verification.

namespace qdot::cli {

int run(int argc, const char* const* argv);

}  // namespace qdot::cli
