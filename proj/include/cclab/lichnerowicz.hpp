#pragma once

#include "cclab/solvers.hpp"

namespace cclab {

/// Data for the Lichnerowicz equation
///   -c_n Lap(phi) + Scal phi + ((n-1)/n) tau^2 phi^{N-1} = A^2 / phi^{N+1}.
/// tau is the mean-curvature profile (tau >= 0, tau -> n at the outer
/// boundary), A the momentum amplitude (A >= 0, decaying); A enters only
/// through A^2.
struct LichData {
    Geometry geom;
    GridPtr grid;
    Field tau;
    Field amplitude; ///< A
};

/// Validates the invariants: tau >= 0 and A >= 0 nodewise,
/// |tau(T) - n| <= 1e-8. Throws std::invalid_argument otherwise.
LichData make_lich_data(const Geometry& geom, GridPtr grid, Field tau,
                        Field amplitude);

/// Nodewise Lichnerowicz residual; boundary rows as in psc_residual. The
/// phi^{-N-1} term mandates strictly positive phi (std::domain_error).
Field lich_residual(const LichData& data, const Field& phi);

SemilinearProblem lich_semilinear(const LichData& data);

/// The A == 0 equation is the prescribed-curvature equation with
/// Shat = -((n-1)/n) tau^2; the zero set of the reduction is tau^{-1}(0).
ProblemPSC reduce_to_psc(const LichData& data);

/// Given phi_tilde solving the A == 0 equation, solves the linear equation
///   -c_n Lap(u) + Scal u + (N-1)((n-1)/n) tau^2 phi_tilde^{N-2} u
///      = A^2 phi_tilde^{-N-1}
/// (the tilde-metric supersolution equation written in untilded variables,
/// u = phi_tilde * u_tilde; the tilde Laplacian is never assembled). The
/// maximum principle forces u >= 0; a violation beyond round-off raises
/// MaxPrincipleViolation. phi_tilde * (1 + u) is then a supersolution of the
/// full equation.
Field linear_supersolution(const LichData& data, const Field& phi_tilde);

/// Equivalence pipeline: computes Z = tau^{-1}(0) and the sign of
/// lambda_g(Z); if positive, solves the A == 0 problem for phi_tilde, builds
/// the supersolution phi_tilde (1 + u), and runs the monotone iteration on
/// the full nonlinearity (exponents 1, N-1, -N-1 feed the omega weight); if
/// negative, returns NoSolution with the certificate, independently of A.
/// Uniqueness is probed by multi-start Newton.
SolveReport lich_solve(const LichData& data, const SolverOptions& opt = {});

/// Max-norm disagreement of Newton solves of the full Lichnerowicz equation
/// from several positive starts.
double lich_uniqueness_spread(const LichData& data, const Field& reference,
                              const SolverOptions& opt = {});

} // namespace cclab
