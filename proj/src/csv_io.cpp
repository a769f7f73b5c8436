#include "cclab/csv_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cclab/errors.hpp"

namespace cclab {

void write_field_csv(std::ostream& out, const Field& f) {
    out << "t,value\n";
    char buf[64];
    for (int i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.grid->t[i], f[i]);
        out << buf;
    }
}

void write_field_csv(const std::string& path, const Field& f) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot open '" + path + "' for writing");
    write_field_csv(out, f);
}

std::vector<std::pair<double, double>> read_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open table '" + path + "'");
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 't,value'");
        char* end = nullptr;
        const std::string a = line.substr(0, comma);
        const std::string b = line.substr(comma + 1);
        const double t = std::strtod(a.c_str(), &end);
        if (end == a.c_str()) {
            if (lineno == 1) continue; // header
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": bad abscissa '" + a + "'");
        }
        const double v = std::strtod(b.c_str(), &end);
        if (end == b.c_str())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": bad value '" + b + "'");
        rows.emplace_back(t, v);
    }
    if (rows.empty())
        throw ConfigError(path + ": empty table");
    std::sort(rows.begin(), rows.end());
    return rows;
}

Field field_from_table(GridPtr grid,
                       const std::vector<std::pair<double, double>>& table) {
    if (table.empty())
        throw ConfigError("field_from_table: empty table");
    if (table.front().first > 1e-9 ||
        table.back().first < grid->t_max - 1e-9)
        throw ConfigError("field_from_table: table does not cover [0, T]");
    Field f = make_field(grid);
    size_t k = 0;
    for (int i = 0; i < f.size(); ++i) {
        const double t = f.grid->t[i];
        while (k + 1 < table.size() && table[k + 1].first <= t) ++k;
        if (table[k].first == t) {
            f[i] = table[k].second; // verbatim: keeps round-trips bit-exact
        } else if (k + 1 < table.size()) {
            const auto& [t0, v0] = table[k];
            const auto& [t1, v1] = table[k + 1];
            f[i] = v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        } else {
            f[i] = table[k].second;
        }
    }
    return f;
}

} // namespace cclab
