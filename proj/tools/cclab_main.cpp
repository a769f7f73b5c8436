#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cclab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cclab - prescribed scalar curvature and Lichnerowicz "
                 "solvers on radial asymptotically hyperbolic backgrounds"};
    app.require_subcommand(1);

    std::string run_cfg;
    CLI::App* run = app.add_subcommand("run", "run one scenario config");
    run->add_option("config", run_cfg, "scenario JSON")->required();

    std::string sweep_cfg, sweep_param;
    std::vector<double> sweep_values;
    CLI::App* sweep =
        app.add_subcommand("sweep", "run a scenario once per parameter value");
    sweep->add_option("config", sweep_cfg, "scenario JSON")->required();
    sweep->add_option("--param", sweep_param,
                      "JSON pointer of a scalar config field, e.g. /params/zw")
        ->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',');

    std::string yamabe_cfg;
    CLI::App* yam = app.add_subcommand(
        "yamabe", "local eigenvalue/Yamabe diagnostics for listed regions");
    yam->add_option("config", yamabe_cfg, "scenario JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cclab::exit_usage;
    }

    if (run->parsed()) return cclab::run_scenario(run_cfg);
    if (sweep->parsed())
        return cclab::run_sweep(sweep_cfg, sweep_param, sweep_values);
    if (yam->parsed()) return cclab::run_yamabe(yamabe_cfg);
    return cclab::exit_usage;
}
