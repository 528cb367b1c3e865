#pragma once

#include <ostream>

namespace morpho::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for `morpho <command> ...`: measure, generate, plot,
/// classify and cluster. Normal output goes to `out`, diagnostics to `err`.
/// Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace morpho::cli
