#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "cclab/geometry.hpp"

namespace cclab {

/// Uniform 1D mesh in the radial coordinate t with quadrature and face
/// weights baked in from a Geometry.
///
/// Boundary roles are fixed: symmetry (u'(0) = 0, handled by the divergence
/// form and the half-cell mass at t = 0) at the inner end, Dirichlet at the
/// outer end t = T.
struct Grid {
    int m = 0;          ///< number of cells; m+1 nodes
    double t_max = 0.0; ///< outer truncation radius T
    double h = 0.0;     ///< uniform spacing T/m

    std::vector<double> t;      ///< nodes t_i = i h, size m+1
    std::vector<double> w;      ///< volume density at nodes, size m+1
    std::vector<double> w_face; ///< w((t_i + t_{i+1})/2), size m
    std::vector<double> q;      ///< quadrature weights, size m+1

    int num_nodes() const { return m + 1; }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Real-valued grid function bound to its owning Grid.
struct Field {
    GridPtr grid;
    std::vector<double> v;

    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }
};

/// Builds the uniform grid. Interior quadrature weights are w(t_i) h with
/// trapezoid-corrected endpoints; at t = 0 the corrected weight is the exact
/// half-cell mass \int_0^{h/2} w dt, which keeps the node-0 operator row
/// symmetric in the q-weighted inner product and makes summation by parts
/// exact.
GridPtr make_grid(const Geometry& geom, int m);

Field make_field(GridPtr grid, double fill = 0.0);
Field sample(GridPtr grid, const std::function<double(double)>& f);

/// Throws std::invalid_argument unless the fields live on grids of equal size.
void require_same_grid(const Field& a, const Field& b);

/// Divergence-form radial Laplace-Beltrami operator, Lap u = w^{-1} (w u')'.
///
/// Interior stencil: [w_{i+1/2}(u_{i+1}-u_i) - w_{i-1/2}(u_i-u_{i-1})]/(w_i h^2).
/// At t = 0 the inner flux vanishes with w(0) = 0 and the half-cell mass
/// closes the stencil (second-order at the center for even data). At t = T a
/// one-sided second-order form of u'' + (n-1) coth(t) u' is used; the caller
/// supplies whatever boundary value is pinned there.
Field laplacian_apply(const Grid& grid, const Geometry& geom, const Field& u);

/// Discrete Dirichlet pairing  sum_i w_{i+1/2} (u_{i+1}-u_i)(v_{i+1}-v_i)/h,
/// the quadrature of \int <du, dv> dmu. Symmetric bilinear.
double energy_inner(const Grid& grid, const Field& u, const Field& v);

} // namespace cclab
