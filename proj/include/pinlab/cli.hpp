#pragma once

namespace pinlab {

// Parses argv and dispatches to the pipeline. Returns the process exit
// code: 0 success, 1 runtime failure (error name on stderr), 2 usage.
int run_cli(int argc, const char* const* argv);

}  // namespace pinlab
