#pragma once

#include <vector>

#include "cclab/grid.hpp"
#include "cclab/tridiag.hpp"

namespace cclab {

/// Rows a..b of the discrete operator -c_n Lap + diag(c), with couplings to
/// nodes outside [a, b] eliminated Dirichlet-style (they stay in the
/// diagonal). c is indexed by absolute node and must cover [a, b]. The
/// dropped coupling coefficients are reported through couple_lo/couple_hi so
/// known boundary values can be moved to the right-hand side.
///
/// Row 0, when included, is the symmetry-closed finite-volume row (zero
/// inner flux, half-cell mass), which keeps the operator symmetric in the
/// q-weighted inner product and an M-matrix for c >= 0.
TriDiag assemble_rows(const Grid& grid, const Geometry& geom,
                      const std::vector<double>& c, int a, int b,
                      double* couple_lo = nullptr, double* couple_hi = nullptr);

} // namespace cclab
