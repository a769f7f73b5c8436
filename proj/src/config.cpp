#include "cclab/config.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "cclab/errors.hpp"

namespace cclab {

namespace {

using json = nlohmann::ordered_json;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

template <typename T>
T require(const json& j, const char* block, const char* key) {
    if (!j.contains(key))
        throw ConfigError(std::string("config block '") + block +
                          "' is missing required field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + block + "." + key +
                          "': " + e.what());
    }
}

ScenarioConfig parse(const json& root, const std::string& path) {
    ScenarioConfig cfg;
    cfg.source_path = path;
    const std::string base_dir =
        std::filesystem::path(path).parent_path().string().empty()
            ? "."
            : std::filesystem::path(path).parent_path().string();

    if (root.contains("params")) {
        for (const auto& [k, v] : root.at("params").items()) {
            if (!v.is_number())
                throw ConfigError("params." + k + " must be a number");
            cfg.params[k] = v.get<double>();
        }
    }

    if (!root.contains("geometry"))
        throw ConfigError("config is missing the 'geometry' block");
    const json& geo = root.at("geometry");
    cfg.n = require<int>(geo, "geometry", "n");
    cfg.t_max = require<double>(geo, "geometry", "t_max");
    cfg.m = require<int>(geo, "geometry", "m");
    if (cfg.n < 3) throw ConfigError("geometry.n must be >= 3");
    if (!(cfg.t_max > 0.0)) throw ConfigError("geometry.t_max must be positive");
    if (cfg.m < 200) throw ConfigError("geometry.m must be at least 200");
    if (geo.contains("scal_perturbation"))
        cfg.scal_perturbation =
            parse_profile(geo.at("scal_perturbation").get<std::string>(),
                          cfg.params, base_dir);

    if (!root.contains("problem"))
        throw ConfigError("config is missing the 'problem' block");
    const json& pb = root.at("problem");
    const std::string type = require<std::string>(pb, "problem", "type");
    if (type == "psc") {
        cfg.kind = ProblemKind::psc;
        cfg.s_hat = parse_profile(require<std::string>(pb, "problem", "s_hat"),
                                  cfg.params, base_dir);
        cfg.delta = get_or<double>(pb, "delta", 0.5 * cfg.n);
    } else if (type == "lichnerowicz") {
        cfg.kind = ProblemKind::lichnerowicz;
        cfg.tau = parse_profile(require<std::string>(pb, "problem", "tau"),
                                cfg.params, base_dir);
        cfg.amplitude = parse_profile(require<std::string>(pb, "problem", "A"),
                                      cfg.params, base_dir);
    } else if (type == "yamabe") {
        cfg.kind = ProblemKind::yamabe;
        if (!pb.contains("regions") || !pb.at("regions").is_array() ||
            pb.at("regions").empty())
            throw ConfigError("problem.regions must be a non-empty array");
        for (const auto& r : pb.at("regions")) {
            if (!r.is_array() || r.size() != 2)
                throw ConfigError("each region must be a [t_lo, t_hi] pair");
            cfg.regions.emplace_back(r[0].get<double>(), r[1].get<double>());
        }
    } else {
        throw ConfigError("problem.type must be psc, lichnerowicz or yamabe");
    }

    if (root.contains("solver")) {
        const json& sv = root.at("solver");
        cfg.method = get_or<std::string>(sv, "method", "auto");
        cfg.solver.tol = get_or<double>(sv, "tol", 1e-10);
        cfg.solver.max_iter = get_or<int>(sv, "max_iter", 0);
        cfg.solver.omega_margin = get_or<double>(sv, "omega_margin", 0.1);
        cfg.solver.damping = get_or<double>(sv, "damping", 0.5);
        if (cfg.method != "auto" && cfg.method != "newton" &&
            cfg.method != "variational" && cfg.method != "monotone")
            throw ConfigError("solver.method must be auto, newton, "
                              "variational or monotone");
        if (!(cfg.solver.tol > 0.0))
            throw ConfigError("solver.tol must be positive");
    }

    if (root.contains("output")) {
        const json& out = root.at("output");
        cfg.out_dir = get_or<std::string>(out, "dir", ".");
        cfg.report_name = get_or<std::string>(out, "report", "report.json");
        cfg.write_fields = get_or<bool>(out, "fields", true);
        cfg.write_trace = get_or<bool>(out, "trace", false);
    }
    cfg.solver.keep_trace = true;
    return cfg;
}

} // namespace

ScenarioConfig load_config(const std::string& path) {
    return parse(read_json(path), path);
}

ScenarioConfig load_config_with_override(const std::string& path,
                                         const std::string& pointer,
                                         double value) {
    json root = read_json(path);
    json::json_pointer ptr;
    try {
        ptr = json::json_pointer(pointer);
    } catch (const json::exception& e) {
        throw ConfigError("bad parameter pointer '" + pointer + "': " + e.what());
    }
    if (!root.contains(ptr))
        throw ConfigError("parameter pointer '" + pointer +
                          "' does not address a config field");
    if (!root.at(ptr).is_number())
        throw ConfigError("parameter pointer '" + pointer +
                          "' must address a scalar numeric field");
    root[ptr] = value;
    return parse(root, path);
}

} // namespace cclab
