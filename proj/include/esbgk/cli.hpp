#pragma once

#include "esbgk/config.hpp"

namespace esbgk {

// Subcommand bodies behind the executable. They throw (ConfigError for bad
// input, Error for solver failures); the binary maps exceptions to exit codes.

// Time loop with diagnostics: writes diagnostics.csv, state.bin, optional
// state_<step>.bin at the cadence, and run_meta.json (the one file with a
// timestamp) into cfg.output.dir.
int cmd_run(const RunConfig& cfg);

// Self-convergence ladder: writes convergence.json and convergence.csv.
int cmd_converge(const RunConfig& cfg);

// Structural checks on the configured scheme, one pass/fail line each.
// Returns 0 only if every check holds.
int cmd_check(const RunConfig& cfg);

}  // namespace esbgk
