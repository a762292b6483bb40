#pragma once

namespace rmg {

// Entry point for the `roadmap` tool. Returns the process exit code:
// 0 success, 2 validation/input error, 3 infeasible demand.
int cli_main(int argc, const char* const* argv);

}  // namespace rmg
