#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cclab/grid.hpp"

namespace cclab {

/// Writes a field as CSV with header "t,value". Values are printed with 17
/// significant digits, which round-trips doubles bit-exactly.
void write_field_csv(std::ostream& out, const Field& f);
void write_field_csv(const std::string& path, const Field& f);

/// Reads a (t, value) table; tolerates a header line. Throws ConfigError on
/// malformed rows.
std::vector<std::pair<double, double>> read_table_csv(const std::string& path);

/// Binds a (t, value) table to a grid, re-sampling by linear interpolation.
/// Node values that coincide with table abscissae are taken verbatim, so a
/// write/read cycle on the same grid is bit-exact. The table must cover
/// [0, T].
Field field_from_table(GridPtr grid,
                       const std::vector<std::pair<double, double>>& table);

} // namespace cclab
