#pragma once

namespace fdlab::cli {

/// Experiment runner entry point.
/// Subcommands: extend, evolve, barriers, flatness, exponent, validate.
/// Exit code 0 when every asserted check passes, 1 on a check or run
/// failure, 2 on usage/config errors (usage text on stderr).
int run(int argc, const char* const* argv);

} // namespace fdlab::cli
