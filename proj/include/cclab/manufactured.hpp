#pragma once

#include "cclab/functionals.hpp"
#include "cclab/lichnerowicz.hpp"

namespace cclab {

/// Manufactured verification data: phi*(t) = 1 + amp / cosh^2(t) together
/// with its closed-form radial Laplacian and the curvature profile it
/// prescribes. The source is evaluated analytically (not through the
/// discrete stencil), so discrete solves against it expose the genuine
/// second-order truncation error.
struct ManufacturedPSC {
    double amp = 0.1;

    double phi(double t) const;
    double dphi(double t) const;
    double lap_phi(int n, double t) const; ///< phi'' + (n-1) coth(t) phi'
    double s_hat(const Geometry& geom, double t) const;
};

/// Samples phi* and builds the matching problem on a grid.
Field manufactured_phi(const ManufacturedPSC& mms, GridPtr grid);
ProblemPSC manufactured_problem(const ManufacturedPSC& mms,
                                const Geometry& geom, GridPtr grid);

/// Manufactured Lichnerowicz data: given a positive profile phi* -> 1 and
/// tau == n, defines A^2 := phi*^{N+1} (A==0 residual of phi*). Throws
/// std::invalid_argument if the induced A^2 is negative anywhere (drafts are
/// rejected, never clipped, since clipping breaks the manufactured
/// identity).
struct ManufacturedLich {
    double amp = 0.02;
    double center = 6.0;
    double width = 2.0;

    double phi(double t) const;
    double dphi(double t) const;
    double lap_phi(int n, double t) const;
    double a_squared(const Geometry& geom, double t) const;
};

Field manufactured_lich_phi(const ManufacturedLich& mms, GridPtr grid);
LichData manufactured_lich_data(const ManufacturedLich& mms,
                                const Geometry& geom, GridPtr grid);

} // namespace cclab
