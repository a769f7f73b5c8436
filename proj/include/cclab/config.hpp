#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cclab/lichnerowicz.hpp"
#include "cclab/profiles.hpp"
#include "cclab/solvers.hpp"

namespace cclab {

enum class ProblemKind { psc, lichnerowicz, yamabe };

/// Parsed and validated scenario configuration. Exactly one problem block,
/// m >= 200, and every referenced profile resolvable.
struct ScenarioConfig {
    // geometry block
    int n = 3;
    double t_max = 20.0;
    int m = 4000;
    std::optional<Profile> scal_perturbation;

    // problem block
    ProblemKind kind = ProblemKind::psc;
    std::optional<Profile> s_hat;
    double delta = 1.5;
    std::optional<Profile> tau;
    std::optional<Profile> amplitude;
    std::vector<std::pair<double, double>> regions;

    // solver block
    std::string method = "auto"; ///< auto | newton | variational | monotone
    SolverOptions solver;

    // output block
    std::string out_dir = ".";
    std::string report_name = "report.json";
    bool write_fields = true;
    bool write_trace = false;

    ParamMap params;
    std::string source_path;
};

/// Loads a config from JSON. Throws ConfigError with field diagnostics.
/// Overrides replace numeric leaves (JSON-pointer addressed) before
/// validation; sweeps use this to substitute parameter values.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig load_config_with_override(const std::string& path,
                                         const std::string& pointer,
                                         double value);

} // namespace cclab
