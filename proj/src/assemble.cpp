#include "cclab/assemble.hpp"

#include <stdexcept>

namespace cclab {

TriDiag assemble_rows(const Grid& grid, const Geometry& geom,
                      const std::vector<double>& c, int a, int b,
                      double* couple_lo, double* couple_hi) {
    if (a < 0 || b > grid.m - 1 || b < a)
        throw std::invalid_argument("assemble_rows: bad node range");
    if (static_cast<int>(c.size()) <= b)
        throw std::invalid_argument("assemble_rows: coefficient too short");

    const double cn = geom.conf_coeff;
    const double h = grid.h;
    const int n = b - a + 1;
    TriDiag A;
    A.diag.resize(static_cast<size_t>(n));
    if (n > 1) {
        A.lower.resize(static_cast<size_t>(n) - 1);
        A.upper.resize(static_cast<size_t>(n) - 1);
    }
    if (couple_lo) *couple_lo = 0.0;
    if (couple_hi) *couple_hi = 0.0;

    for (int i = a; i <= b; ++i) {
        const double denom = h * grid.q[i];
        const double slo = (i == 0) ? 0.0 : cn * grid.w_face[i - 1] / denom;
        const double shi = cn * grid.w_face[i] / denom;
        const double diag = slo + shi + c[i];
        const int r = i - a;
        A.diag[r] = diag;
        if (r > 0) A.lower[r - 1] = -slo;
        if (r < n - 1) A.upper[r] = -shi;
        if (i == a && couple_lo) *couple_lo = slo;
        if (i == b && couple_hi) *couple_hi = shi;
    }
    return A;
}

} // namespace cclab
