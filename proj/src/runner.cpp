#include "cclab/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "cclab/csv_io.hpp"
#include "cclab/errors.hpp"

namespace cclab {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

struct Built {
    Geometry geom;
    GridPtr grid;
};

Built build_geometry(const ScenarioConfig& cfg) {
    Built b;
    b.geom = cfg.scal_perturbation
                 ? make_hyperbolic(cfg.n, cfg.t_max, cfg.scal_perturbation->f)
                 : make_hyperbolic(cfg.n, cfg.t_max);
    b.grid = make_grid(b.geom, cfg.m);
    return b;
}

json conventions_json(const ScenarioConfig& cfg, const Built& b) {
    json j;
    j["schema_version"] = 1;
    j["mesh"] = {{"n", cfg.n},
                 {"t_max", cfg.t_max},
                 {"m", cfg.m},
                 {"h", b.grid->h},
                 {"crit_exp", b.geom.crit_exp},
                 {"conf_coeff", b.geom.conf_coeff}};
    j["conventions"] = {
        {"angular_factor", "omega_{n-1} normalized to 1 (per unit sphere)"},
        {"coordinate", "geodesic distance t, uniform mesh"},
        {"defining_function", "rho(t) = exp(-t)"},
        {"inner_bc", "symmetry (zero flux at t = 0)"},
        {"outer_bc", "dirichlet phi(T) = 1"},
        {"x_norm_window", 1.0},
        {"quadrature", "trapezoid with half-cell mass at t = 0"}};
    j["tolerances"] = {{"tol", cfg.solver.tol},
                       {"omega_margin", cfg.solver.omega_margin},
                       {"damping", cfg.solver.damping},
                       {"tol_zero", "1e-12 * max(1, |Scal|_max)"},
                       {"tol_sign", "1e-8 * max(1, |Scal|_max)"}};
    return j;
}

json region_to_json(const Region& r, const Grid& grid) {
    json arr = json::array();
    for (const auto& [a, b] : r.intervals)
        arr.push_back({grid.t[a], grid.t[b]});
    return arr;
}

json report_to_json(const SolveReport& rep, const Grid& grid, bool with_trace) {
    json j;
    j["verdict"] = to_string(rep.verdict);
    j["method"] = rep.method;
    j["iterations"] = rep.iterations;
    j["residual_inf"] = number_or_null(rep.residual_inf);
    j["bounds"] = {rep.min_phi, rep.max_phi};
    if (rep.decay) {
        j["decay"] = {{"exponent", rep.decay->exponent},
                      {"r2", rep.decay->r2},
                      {"window", {rep.decay->t_lo, rep.decay->t_hi}}};
    } else {
        j["decay"] = nullptr;
    }
    j["lambda_Z"] = rep.lambda_Z ? json(*rep.lambda_Z) : json(nullptr);
    j["region_Z"] = region_to_json(rep.region_Z, grid);
    j["uniqueness_spread"] = rep.uniqueness_spread;
    if (rep.method == "variational" || rep.final_F != 0.0)
        j["final_F"] = rep.final_F;
    if (rep.witness) {
        json w;
        w["lambda"] = rep.witness->lambda;
        w["region"] = region_to_json(rep.witness->region, grid);
        w["s_values"] = rep.witness->s_values;
        w["f_values"] = rep.witness->f_values;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    if (with_trace) {
        json tr = json::array();
        for (const auto& rec : rep.trace)
            tr.push_back({{"residual", rec.residual_inf},
                          {"step_max", rec.step_max},
                          {"objective", rec.objective}});
        j["trace"] = tr;
    }
    return j;
}

struct ScenarioOutcome {
    int exit_code = exit_ok;
    json report;
    SolveReport solve; // for field output
    bool has_solution = false;
};

Field build_monotone_sub(const ProblemPSC& prob) {
    const Grid& grid = *prob.grid;
    const double N = prob.geom.crit_exp;
    double c = 1.0;
    for (int i = 0; i <= grid.m; ++i) {
        if (prob.target_scal[i] >= 0.0)
            throw SolverError(
                "method 'monotone' needs strictly negative prescribed "
                "curvature (constant barriers); use method 'auto'");
        c = std::fmin(c, std::pow(prob.tilde_scal[i] / prob.target_scal[i],
                                  1.0 / (N - 2.0)));
    }
    return make_field(prob.grid, 0.5 * c);
}

Field build_monotone_sup(const ProblemPSC& prob) {
    const Grid& grid = *prob.grid;
    const double N = prob.geom.crit_exp;
    double c = 1.0;
    for (int i = 0; i <= grid.m; ++i)
        c = std::fmax(c, std::pow(prob.tilde_scal[i] / prob.target_scal[i],
                                  1.0 / (N - 2.0)));
    return make_field(prob.grid, c);
}

ScenarioOutcome execute(const ScenarioConfig& cfg) {
    Built b = build_geometry(cfg);
    ScenarioOutcome out;
    out.report = conventions_json(cfg, b);

    if (cfg.kind == ProblemKind::yamabe) {
        ProblemPSC prob = make_problem(b.geom, b.grid,
                                       make_field(b.grid, 0.0), 0.5 * cfg.n);
        json regions = json::array();
        for (const auto& [lo, hi] : cfg.regions) {
            Region V = region_from_t(*b.grid, {{lo, hi}});
            SignAgreement sa = sign_agreement(prob, V);
            regions.push_back({{"t_span", {lo, hi}},
                               {"lambda", sa.lambda},
                               {"yamabe_upper", sa.yamabe_upper},
                               {"sign_lambda", sa.sign_lambda},
                               {"sign_yamabe", sa.sign_yamabe},
                               {"agree", sa.agree}});
        }
        out.report["result"] = {{"kind", "yamabe"}, {"regions", regions}};
        out.exit_code = exit_ok;
        return out;
    }

    if (cfg.kind == ProblemKind::psc) {
        Field s_hat = sample(b.grid, cfg.s_hat->f);
        ProblemPSC prob =
            make_problem(b.geom, b.grid, std::move(s_hat), cfg.delta);
        SolveReport rep;
        if (cfg.method == "auto") {
            rep = solve_theorem_a(prob, cfg.solver);
        } else if (cfg.method == "newton") {
            rep = newton_solve(prob, make_field(b.grid, 1.0), cfg.solver);
        } else if (cfg.method == "variational") {
            rep = variational_solve(prob, cfg.solver);
        } else { // monotone
            rep = monotone_solve(prob, build_monotone_sub(prob),
                                 build_monotone_sup(prob), cfg.solver);
        }
        out.report["result"] = report_to_json(rep, *b.grid, cfg.write_trace);
        out.report["result"]["kind"] = "psc";
        out.solve = std::move(rep);
        out.has_solution = true;
    } else {
        Field tau = sample(b.grid, cfg.tau->f);
        Field amp = sample(b.grid, cfg.amplitude->f);
        LichData data =
            make_lich_data(b.geom, b.grid, std::move(tau), std::move(amp));
        SolveReport rep = lich_solve(data, cfg.solver);
        out.report["result"] = report_to_json(rep, *b.grid, cfg.write_trace);
        out.report["result"]["kind"] = "lichnerowicz";
        out.solve = std::move(rep);
        out.has_solution = true;
    }

    switch (out.solve.verdict) {
        case Verdict::Solved: out.exit_code = exit_ok; break;
        case Verdict::NoSolution: out.exit_code = exit_no_solution; break;
        case Verdict::NotConverged: out.exit_code = exit_not_converged; break;
    }
    return out;
}

std::mutex g_io_mutex;

void write_outputs(const ScenarioConfig& cfg, const ScenarioOutcome& out,
                   const std::string& dir) {
    std::lock_guard<std::mutex> lock(g_io_mutex);
    fs::create_directories(dir);
    {
        std::ofstream rep(dir + "/" + cfg.report_name);
        if (!rep)
            throw ConfigError("cannot write report into '" + dir + "'");
        rep << out.report.dump(2) << "\n";
    }
    if (cfg.write_fields && out.has_solution)
        write_field_csv(dir + "/solution.csv", out.solve.solution);
}

int worker_count(size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("CCLAB_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    if (n < 1) n = 1;
    if (n > 16) n = 16;
    if (n > jobs) n = static_cast<unsigned>(jobs);
    return static_cast<int>(n);
}

} // namespace

int run_scenario(const std::string& config_path) {
    try {
        ScenarioConfig cfg = load_config(config_path);
        ScenarioOutcome out = execute(cfg);
        write_outputs(cfg, out, cfg.out_dir);
        std::fprintf(stdout, "%s\n",
                     out.report.at("result")
                         .value("verdict", std::string("computed"))
                         .c_str());
        return out.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
}

int run_yamabe(const std::string& config_path) {
    try {
        ScenarioConfig cfg = load_config(config_path);
        if (cfg.kind != ProblemKind::yamabe) {
            std::fprintf(stderr,
                         "error: 'yamabe' expects a config with "
                         "problem.type == \"yamabe\"\n");
            return exit_usage;
        }
        ScenarioOutcome out = execute(cfg);
        write_outputs(cfg, out, cfg.out_dir);
        for (const auto& r : out.report.at("result").at("regions"))
            std::fprintf(stdout, "V = [%g, %g]  lambda = %.12g  Y <= %.12g  %s\n",
                         r.at("t_span")[0].get<double>(),
                         r.at("t_span")[1].get<double>(),
                         r.at("lambda").get<double>(),
                         r.at("yamabe_upper").get<double>(),
                         r.at("agree").get<bool>() ? "signs agree"
                                                   : "SIGN DISAGREEMENT");
        return out.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
}

int run_sweep(const std::string& config_path, const std::string& pointer,
              const std::vector<double>& values) {
    if (values.empty()) {
        std::fprintf(stderr, "error: sweep needs a non-empty value list\n");
        return exit_usage;
    }
    try {
        struct Entry {
            double value = 0.0;
            std::string verdict = "error";
            double residual = NAN;
            double decay = NAN;
            double lambda_Z = NAN;
        };
        std::vector<Entry> entries(values.size());
        ScenarioConfig base = load_config(config_path);

        std::atomic<size_t> next{0};
        std::atomic<bool> failed{false};
        std::string first_error;
        std::mutex err_mutex;

        auto work = [&]() {
            for (;;) {
                const size_t k = next.fetch_add(1);
                if (k >= values.size()) return;
                try {
                    ScenarioConfig cfg = load_config_with_override(
                        config_path, pointer, values[k]);
                    char sub[32];
                    std::snprintf(sub, sizeof sub, "entry_%03zu", k);
                    ScenarioOutcome out = execute(cfg);
                    write_outputs(cfg, out, cfg.out_dir + "/" + sub);
                    Entry e;
                    e.value = values[k];
                    if (out.has_solution) {
                        e.verdict = to_string(out.solve.verdict);
                        e.residual = out.solve.residual_inf;
                        if (out.solve.decay) e.decay = out.solve.decay->exponent;
                        if (out.solve.lambda_Z) e.lambda_Z = *out.solve.lambda_Z;
                    } else {
                        e.verdict = "computed";
                    }
                    entries[k] = e;
                } catch (const std::exception& ex) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!failed.exchange(true)) first_error = ex.what();
                }
            }
        };

        const int nw = worker_count(values.size());
        std::vector<std::thread> pool;
        for (int i = 0; i < nw; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();

        if (failed.load()) {
            std::fprintf(stderr, "error: %s\n", first_error.c_str());
            return exit_usage;
        }

        fs::create_directories(base.out_dir);
        std::ofstream idx(base.out_dir + "/index.csv");
        idx << "value,verdict,residual,decay_exponent,lambda_Z\n";
        char buf[160];
        for (const Entry& e : entries) {
            std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g,%.17g\n",
                          e.value, e.verdict.c_str(), e.residual, e.decay,
                          e.lambda_Z);
            idx << buf;
        }
        return exit_ok;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
}

} // namespace cclab
