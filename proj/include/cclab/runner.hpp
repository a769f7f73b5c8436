#pragma once

#include <string>
#include <vector>

#include "cclab/config.hpp"

namespace cclab {

/// Exit codes of the batch front end.
enum ExitCode {
    exit_ok = 0,           ///< Solved / computed
    exit_usage = 1,        ///< usage or configuration error
    exit_no_solution = 2,  ///< certified nonexistence
    exit_not_converged = 3
};

/// Runs one scenario: writes the report JSON (schema_version 1) and the
/// field CSVs into the configured output directory. Returns an ExitCode.
/// Reports are self-describing (mesh, tolerances, conventions) and
/// deterministic: re-running a scenario reproduces them bit-identically.
int run_scenario(const std::string& config_path);

/// Runs the scenario once per parameter value (JSON-pointer addressed
/// scalar), writing per-entry reports plus an index CSV with columns
/// value,verdict,residual,decay_exponent,lambda_Z in input order. Entries
/// execute concurrently up to the worker count (CCLAB_WORKERS overrides).
int run_sweep(const std::string& config_path, const std::string& pointer,
              const std::vector<double>& values);

/// Yamabe diagnostics for a config whose problem block lists regions.
int run_yamabe(const std::string& config_path);

} // namespace cclab
