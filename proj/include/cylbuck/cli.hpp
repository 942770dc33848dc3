#pragma once

#include "cylbuck/error.hpp"

namespace cylbuck {

/// 2 for configuration and precondition errors, 3 for numerical failures.
int exit_code(ErrorCode code) noexcept;

/// Entry point of the command-line tool (subcommands curve, sweep, ansatz).
int run_cli(int argc, char** argv);

}  // namespace cylbuck
