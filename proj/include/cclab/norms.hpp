#pragma once

#include "cclab/grid.hpp"

namespace cclab {

/// (sum_i q_i |u_i|^p)^{1/p}. Requires p >= 1.
double lp_norm(const Grid& grid, const Field& u, double p);

/// L^N norm, N = 2n/(n-2) the critical exponent of geom.
double ln_norm(const Grid& grid, const Geometry& geom, const Field& u);

/// Discrete weighted local Sobolev seminorm
///   max_i rho(t_i)^{-delta} ( sum_{|t_j - t_i| <= window} q_j |u_j|^p )^{1/p}.
/// The window radius defaults to r = 1 everywhere in this project; different
/// admissible radii give equivalent norms, and reports record the convention.
double weighted_x_norm(const Grid& grid, const Geometry& geom, const Field& u,
                       double delta, double p, double window = 1.0);

struct DecayFit {
    double exponent = 0.0; ///< sign-flipped log-slope, so e^{-d t} fits to d
    double r2 = 0.0;       ///< goodness of fit
    double t_lo = 0.0;
    double t_hi = 0.0;
};

/// Least-squares fit of log u against t on [t_lo, t_hi]. The caller passes a
/// positive field (typically |phi - 1| with a floor). Throws on windows with
/// fewer than 8 nodes, on t_lo >= t_hi or t_hi > T - 1, and on non-positive
/// data in the window.
DecayFit decay_fit(const Grid& grid, const Field& u, double t_lo, double t_hi);

} // namespace cclab
