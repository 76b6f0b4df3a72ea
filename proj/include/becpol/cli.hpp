#pragma once

namespace becpol {

// full command-line front end; returns the process exit code:
//   0 success, 1 input or usage error, 2 convergence failure (partial rows
//   are still written, followed by a "# error:" line)
int run_cli(int argc, const char* const* argv);

} // namespace becpol
