#pragma once

// Command-line front end. Exit codes: 0 every trial passed, 1 at least one
// Violation or ProgramError, 2 usage or configuration error.

#include <iosfwd>
#include <string>
#include <vector>

namespace retro {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailures = 1;
inline constexpr int kExitConfig = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace retro
