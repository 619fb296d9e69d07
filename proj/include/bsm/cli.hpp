#pragma once

#include <iosfwd>

namespace bsm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoSolution = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapped = 3;

/// Entry point of the `bsm` tool (subcommands gen, solve, bench). Normal
/// output goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bsm
