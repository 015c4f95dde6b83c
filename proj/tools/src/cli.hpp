#pragma once

#include <iosfwd>

namespace critsqueeze::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Parses arguments, runs one subcommand and writes its output. Returns the
/// process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace critsqueeze::cli
