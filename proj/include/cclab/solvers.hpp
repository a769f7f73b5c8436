#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cclab/functionals.hpp"
#include "cclab/norms.hpp"
#include "cclab/spectra.hpp"

namespace cclab {

/// Semilinear radial problem -c_n Lap(phi) + sum_k a_k(x) phi^{lambda_k} = 0
/// with phi pinned to 1 at t = T. The prescribed-curvature equation uses
/// terms {(Stilde, 1), (-Shat, N-1)}; the Lichnerowicz equation adds the
/// negative-power momentum term.
struct SemilinearTerm {
    Field coeff;
    double exponent;
};

struct SemilinearProblem {
    Geometry geom;
    GridPtr grid;
    std::vector<SemilinearTerm> terms;
    double outer_value = 1.0; ///< Dirichlet value at t = T
};

SemilinearProblem psc_semilinear(const ProblemPSC& prob);

/// Nodewise residual of the semilinear equation. Interior rows carry the
/// equation; the node-0 row is the symmetry-closed finite-volume equation
/// (its residual measures the defect of the reflection closure) and the
/// outer row is phi(T) - outer_value.
Field semilinear_residual(const SemilinearProblem& sp, const Field& phi);

enum class Verdict { Solved, NoSolution, NotConverged };

std::string to_string(Verdict v);

/// Nonexistence certificate: a region with certified nonpositive local
/// Yamabe invariant and the unbounded-descent values of F along its witness.
struct NoSolutionWitness {
    Region region;
    double lambda = 0.0;
    Field u_neg;
    std::vector<double> s_values;
    std::vector<double> f_values;
};

struct IterationRecord {
    double residual_inf = 0.0;
    double step_max = 0.0;  ///< max over nodes of phi_{k+1} - phi_k
    double objective = 0.0; ///< F value along the variational descent
};

struct SolveReport {
    Field solution;
    double residual_inf = 0.0;
    int iterations = 0;
    std::string method;
    std::optional<DecayFit> decay; ///< fit of |phi - 1| past the data support
    Verdict verdict = Verdict::NotConverged;
    std::optional<NoSolutionWitness> witness;
    double min_phi = 0.0;
    double max_phi = 0.0;
    std::vector<IterationRecord> trace;
    std::optional<double> lambda_Z;   ///< empty when Z is empty (Y = +inf)
    Region region_Z;
    double uniqueness_spread = 0.0;   ///< multi-start Newton disagreement
    double final_F = 0.0;             ///< variational path only
};

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 0;           ///< 0 picks a per-method default
    double omega_margin = 0.1;  ///< safety factor on the monotonicity weight
    double damping = 0.5;       ///< Newton backtracking ratio
    bool keep_trace = true;
};

/// Residual of the prescribed-curvature equation
///   -c_n Lap(phi) + Stilde phi - Shat phi^{N-1}
/// with the boundary rows described at semilinear_residual. Throws
/// std::domain_error naming the first non-positive node of phi.
Field psc_residual(const ProblemPSC& prob, const Field& phi);

/// Monotone iteration from the supersolution: each step solves
///   (-c_n Lap + c_n w) psi = c_n w phi_k - F(x, phi_k)
/// with w(x) >= sum_{l_k >= 1} |l_k||a_k| sup^{l_k - 1}
///            + sum_{l_k < 1} |l_k||a_k| sub^{l_k - 1}, scaled by
/// (1 + omega_margin), so that w phi - F(x, phi) is nondecreasing on
/// [sub, sup]. Iterates decrease monotonically and stay in [sub, sup]
/// exactly; round-off is clipped against the previous iterate and genuine
/// ordering breaches raise MonotonicityBreach.
///
/// sup_defect_tol relaxes the supersolution residual precheck (the
/// Lichnerowicz pipeline passes an O(h^2) allowance for products of discrete
/// solutions); 0 selects a tight scale-aware default.
SolveReport monotone_solve(const SemilinearProblem& sp, const Field& sub,
                           const Field& sup, const SolverOptions& opt = {},
                           double sup_defect_tol = 0.0);
SolveReport monotone_solve(const ProblemPSC& prob, const Field& sub,
                           const Field& sup, const SolverOptions& opt = {});

/// Damped Newton with a positivity line search (step is backtracked by
/// opt.damping until the iterate stays positive and the residual norm
/// decreases). Returns NotConverged if max_iter runs out.
SolveReport newton_solve(const SemilinearProblem& sp, const Field& init,
                         const SolverOptions& opt = {});
SolveReport newton_solve(const ProblemPSC& prob, const Field& init,
                         const SolverOptions& opt = {});

/// Minimizes F from u = 0 by Sobolev-preconditioned gradient descent with
/// Armijo backtracking; each iterate is symmetrized through u -> |u+1| - 1,
/// which never increases F. Convergence is declared on the Euler-Lagrange
/// residual (psc_residual of phi = 1 + u) reaching opt.tol, matching the
/// Solved contract of the other solvers.
SolveReport variational_solve(const ProblemPSC& prob,
                              const SolverOptions& opt = {});

struct Barriers {
    Field phibar0; ///< 0 on the inner sphere, -> 1 at infinity
    Field phibar1; ///< 1 on the inner sphere, -> 0 at infinity
    Field phi_minus; ///< lambda phibar0 - Lambda phibar1, <= cap
    double Lambda = 1.0;
    double coercivity_lambda = 0.0; ///< Rayleigh bottom of the barrier form
};

/// Solves the barrier system -c_n Lap(pb) + (Scal - Shat) pb = 0 on
/// [t_eps, T] with the two complementary Dirichlet pairs, extends phibar0 by
/// 0 and phibar1 by 1 inside t_eps, and auto-selects Lambda as the smallest
/// power of two keeping phi_minus <= cap. Throws BarrierFailure carrying the
/// offending Rayleigh value if the quadratic form fails its coercivity probe.
Barriers make_barriers(const ProblemPSC& prob, double eps_boundary,
                       double lambda_par, double cap = 1.0);

/// Discrete comparison principle probe: with Shat1 <= Shat2 <= 0 nodewise
/// (checked; throws otherwise) and both fields solving their equations,
/// returns true iff phi1 <= phi2 + tol_cmp at every node, where
/// tol_cmp = 10 * max residual of the two.
bool comparison_check(const ProblemPSC& prob1, const ProblemPSC& prob2,
                      const Field& phi1, const Field& phi2);

/// Zero set of Shat within |Shat| <= 1e-12 |Scal|_max, snapped to maximal
/// node runs; runs too short to carry a nontrivial trial space are dropped.
Region zero_region(const ProblemPSC& prob);

/// Solvability dichotomy: computes Z, classifies lambda_g(Z), then either
/// minimizes F (variational descent plus Newton polish) and returns Solved,
/// or returns NoSolution with a coercivity witness attached. A dead-band
/// lambda yields NotConverged; the discrete boundary case is reported, not
/// decided. The report's decay fit uses an adaptive window past the support
/// of Shat - Stilde, restricted to |phi - 1| above the double-precision
/// noise floor.
SolveReport solve_theorem_a(const ProblemPSC& prob,
                            const SolverOptions& opt = {});

/// Max-norm disagreement of Newton solves from several positive starts;
/// uniqueness probe backing the maximum-principle corollary.
double uniqueness_spread(const ProblemPSC& prob, const Field& reference,
                         const SolverOptions& opt = {});

} // namespace cclab
