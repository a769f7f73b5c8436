#pragma once

#include <utility>
#include <vector>

#include "cclab/grid.hpp"

namespace cclab {

/// Prescribed-scalar-curvature problem instance on a radial grid.
///
/// target_scal is the curvature Shat <= 0 to prescribe; tilde_scal is the
/// background curvature the functionals are written against. When only Shat
/// is supplied, tilde_scal defaults to the geometry's background curvature
/// sampled on the grid, and Shat - Scal is expected to be compactly supported
/// on the truncated ray.
struct ProblemPSC {
    Geometry geom;
    GridPtr grid;
    Field target_scal;    ///< Shat, nonpositive nodewise
    Field tilde_scal;     ///< Stilde, defaults to sampled background Scal
    Field background_scal; ///< geom.scal sampled on the grid
    double delta = 1.5;   ///< decay exponent in (0, n), used for reporting
};

/// Builds and validates a problem. Throws std::invalid_argument if Shat has a
/// node above +1e-12 * |Scal|_max or delta is outside (0, n).
ProblemPSC make_problem(const Geometry& geom, GridPtr grid, Field target_scal,
                        double delta);
ProblemPSC make_problem(const Geometry& geom, GridPtr grid, Field target_scal,
                        Field tilde_scal, double delta);

enum class MetricChoice { background, tilde };

/// Conformal-Laplacian quadratic form
///   G(u) = \int [ c_n |du|^2 + Scal u^2 ] dmu,
/// with Scal either the background or the reduced (tilde) profile.
double G_eval(const ProblemPSC& prob, const Field& u,
              MetricChoice metric = MetricChoice::background);

/// Rayleigh quotient G(u) / ||u||_2^2. Throws on u == 0.
double rayleigh_q(const ProblemPSC& prob, const Field& u,
                  MetricChoice metric = MetricChoice::background);

/// Yamabe quotient G(u) / ||u||_N^2. Throws on u == 0.
double yamabe_q(const ProblemPSC& prob, const Field& u,
                MetricChoice metric = MetricChoice::background);

/// Substitution identity behind the asymptotic Poincare inequality: with
/// v = rho^{-d} u and d = (n-1)/2,
///   \int |du|^2 dmu = \int [ rho^{2d} |dv|^2 + K(t) u^2 ] dmu,
/// where on the exact radial model K(t) = (n-1)^2/4 + eps0(t) with the closed
/// form eps0(t) = (n-1)^2 (coth t - 1)/2 -> 0 at infinity. Both sides are
/// computed independently with fourth-order differences and Simpson
/// quadrature; u must be compactly supported in the grid interior.
std::pair<double, double> poincare_identity_check(const ProblemPSC& prob,
                                                  const Field& u);

/// Exact remainder in the Poincare mass coefficient on the model geometry.
double poincare_eps0(const Geometry& geom, double t);

/// h(x) = (2/N)(|x+1|^N - 1) - (x+1)^2 + 1; nonnegative on R, vanishing at
/// x = 0 and x = -2 (for even integer N). Evaluated in a cancellation-safe
/// way near the roots.
double h_eval(double x, double N);

/// Existence functional
///   F(u) = \int [ c_n |du|^2 + Stilde ((u+1)^2 - 1)
///                 - (2/N) Shat (|u+1|^N - 1) ] dmu.
/// F(0) = 0; critical points correspond to solutions phi = 1 + u of the
/// prescribed-curvature equation with background Stilde.
double F_eval(const ProblemPSC& prob, const Field& u);

/// Coordinate gradient of F_eval: (F_grad)_i = 2 q_i r_i with r the discrete
/// Euler-Lagrange residual -c_n Lap(u) + Stilde (u+1) - Shat |u+1|^{N-2}(u+1)
/// at the free nodes 0..m-1; the Dirichlet-fixed node m carries 0.
Field F_grad(const ProblemPSC& prob, const Field& u);

/// Evaluates F along the ray s -> F(s u_neg) for a witness u_neg supported in
/// the zero set of Shat with G(u_neg) < 0. Throws std::invalid_argument if
/// some node has Shat * u_neg != 0 (outside the zero-detection dead band) or
/// if G(u_neg) >= 0. The returned values certify nonexistence when they
/// decrease without bound.
std::vector<double> coercivity_witness(const ProblemPSC& prob,
                                       const Field& u_neg,
                                       const std::vector<double>& s_list);

/// Diagnostic estimate of the constant eta from the integration lemma: the
/// largest sampled eta such that trial fields with
/// \int |Shat| u^N <= eta ||u||_N^N all keep G(u) > 0. Sampling-based, for
/// reporting only; never used in control flow.
double estimate_eta(const ProblemPSC& prob, int samples = 64);

} // namespace cclab
