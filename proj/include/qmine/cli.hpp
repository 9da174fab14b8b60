#pragma once

namespace qmine::cli {

// Entry point for the qmine executable. Returns the process exit code:
// 0 on success, 1 on config/data errors, 2 on usage errors.
int run(int argc, const char* const* argv);

}  // namespace qmine::cli
