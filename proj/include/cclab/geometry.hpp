#pragma once

#include <functional>

namespace cclab {

struct Grid;
struct Field;

/// Radially symmetric asymptotically hyperbolic model manifold.
///
/// The metric is g = dt^2 + sinh^2(t) g_{S^{n-1}} on a ray truncated at
/// t = t_max. The angular volume factor omega_{n-1} is normalized to 1, so
/// every integral is per unit sphere; all quotients used downstream are
/// either invariant or covariant under that constant. The defining function
/// is rho(t) = e^{-t} exactly.
struct Geometry {
    int n = 3;                ///< dimension, n >= 3
    double crit_exp = 6.0;    ///< N = 2n/(n-2), critical Sobolev exponent
    double conf_coeff = 8.0;  ///< c_n = 4(n-1)/(n-2)
    double t_max = 20.0;      ///< truncation radius T

    /// Background scalar curvature profile; constant -n(n-1) by default.
    std::function<double(double)> scal;

    /// Radial volume density sinh^{n-1}(t); w(0) = 0, w > 0 for t > 0.
    double weight(double t) const;

    /// Defining function, strictly decreasing with rho(t) in (0, 1].
    double rho(double t) const;
};

/// Exact hyperbolic model: Scal = -n(n-1), sec = -1.
/// Rejects n < 3 (the conformal exponent N is undefined there).
Geometry make_hyperbolic(int n, double t_max);

/// Hyperbolic model with a radial scalar-curvature perturbation:
/// Scal(t) = -n(n-1) + perturbation(t).
Geometry make_hyperbolic(int n, double t_max,
                         std::function<double(double)> scal_perturbation);

/// Scalar curvature of the conformal metric g_hat = phi^{N-2} g, computed
/// from the discrete transformation law
///   Shat = phi^{1-N} (-c_n Lap(phi) + Scal phi).
/// Applying this to a solver output reproduces the prescribed curvature up
/// to discretization error. phi must be positive at every node.
Field conformal_scal(const Geometry& geom, const Grid& grid, const Field& phi);

} // namespace cclab
