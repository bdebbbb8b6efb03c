#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "floodrisk/error.hpp"

namespace floodrisk::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitNumeric = 4;

int exit_code_for(ErrorKind kind) noexcept;

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floodrisk::app
