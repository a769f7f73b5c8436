#include "cclab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cclab {

namespace {

// 8-point Gauss-Legendre on [0, 1]; exact to machine precision for the
// analytic half-cell mass integrand.
constexpr double kGaussX[8] = {
    0.01985507175123188, 0.10166676129318664, 0.2372337950418355,
    0.40828267875217505, 0.59171732124782495, 0.7627662049581645,
    0.89833323870681336, 0.98014492824876812};
constexpr double kGaussW[8] = {
    0.05061426814518813, 0.11119051722668724, 0.15685332293894364,
    0.18134189168918099, 0.18134189168918099, 0.15685332293894364,
    0.11119051722668724, 0.05061426814518813};

double integrate(const Geometry& geom, double a, double b) {
    double s = 0.0;
    for (int k = 0; k < 8; ++k)
        s += kGaussW[k] * geom.weight(a + (b - a) * kGaussX[k]);
    return s * (b - a);
}

} // namespace

GridPtr make_grid(const Geometry& geom, int m) {
    if (m < 4) throw std::invalid_argument("make_grid: need at least 4 cells");
    auto g = std::make_shared<Grid>();
    g->m = m;
    g->t_max = geom.t_max;
    g->h = geom.t_max / m;
    g->t.resize(static_cast<size_t>(m) + 1);
    g->w.resize(static_cast<size_t>(m) + 1);
    g->w_face.resize(static_cast<size_t>(m));
    g->q.resize(static_cast<size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        g->t[i] = g->h * i;
        g->w[i] = geom.weight(g->t[i]);
        if (!std::isfinite(g->w[i]))
            throw std::invalid_argument(
                "make_grid: volume density overflows at t = " +
                std::to_string(g->t[i]) + "; reduce t_max or n");
    }
    for (int i = 0; i < m; ++i)
        g->w_face[i] = geom.weight(0.5 * (g->t[i] + g->t[i + 1]));
    // Exact cell masses (w(t_i) h up to O(h^2), halved cells at the ends).
    // Near the axis w ~ t^{n-1} makes the midpoint mass off by an O(1)
    // factor, so the exact integral is what keeps the divergence-form
    // stencil uniformly second order; it also telescopes to \int w exactly
    // and closes summation by parts without a boundary term.
    g->q[0] = integrate(geom, 0.0, 0.5 * g->h);
    for (int i = 1; i < m; ++i)
        g->q[i] = integrate(geom, g->t[i] - 0.5 * g->h, g->t[i] + 0.5 * g->h);
    g->q[m] = integrate(geom, g->t_max - 0.5 * g->h, g->t_max);
    return g;
}

Field make_field(GridPtr grid, double fill) {
    Field f;
    f.v.assign(static_cast<size_t>(grid->num_nodes()), fill);
    f.grid = std::move(grid);
    return f;
}

Field sample(GridPtr grid, const std::function<double(double)>& fn) {
    Field f = make_field(grid);
    for (int i = 0; i < f.size(); ++i) f[i] = fn(f.grid->t[i]);
    return f;
}

void require_same_grid(const Field& a, const Field& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("fields live on grids of different size (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
}

Field laplacian_apply(const Grid& grid, const Geometry& geom, const Field& u) {
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("laplacian_apply: field/grid size mismatch");
    const int m = grid.m;
    const double h = grid.h;
    Field out = u;

    // Symmetry closure at the center: zero inner flux, half-cell mass.
    out[0] = grid.w_face[0] * (u[1] - u[0]) / (h * grid.q[0]);

    for (int i = 1; i < m; ++i) {
        out[i] = (grid.w_face[i] * (u[i + 1] - u[i]) -
                  grid.w_face[i - 1] * (u[i] - u[i - 1])) /
                 (h * grid.q[i]);
    }

    // One-sided second-order closure at t = T from the non-divergence form
    // u'' + (n-1) coth(t) u'.
    const double upp =
        (2.0 * u[m] - 5.0 * u[m - 1] + 4.0 * u[m - 2] - u[m - 3]) / (h * h);
    const double up = (3.0 * u[m] - 4.0 * u[m - 1] + u[m - 2]) / (2.0 * h);
    out[m] = upp + (geom.n - 1) * (std::cosh(grid.t[m]) / std::sinh(grid.t[m])) * up;
    return out;
}

double energy_inner(const Grid& grid, const Field& u, const Field& v) {
    require_same_grid(u, v);
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("energy_inner: field/grid size mismatch");
    double s = 0.0;
    for (int i = 0; i < grid.m; ++i)
        s += grid.w_face[i] * (u[i + 1] - u[i]) * (v[i + 1] - v[i]);
    return s / grid.h;
}

} // namespace cclab
