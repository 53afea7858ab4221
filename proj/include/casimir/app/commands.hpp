#pragma once

#include <ostream>

namespace casimir::app {

/// Process exit codes. Frozen: scripts depend on them.
enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_usage = 2,  // config, usage or unsupported-request errors
  exit_convergence = 3,
};

/// Entry point of the `casimir` tool. Tables go to `out` (or the --out file),
/// the human-readable summary and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::app
