#pragma once

#include <utility>
#include <vector>

#include "cclab/functionals.hpp"

namespace cclab {

/// Finite union of closed annuli, stored as disjoint sorted node-index
/// intervals [a_k, b_k]. Fields in the trial space F(V) vanish at every node
/// outside the intervals.
struct Region {
    std::vector<std::pair<int, int>> intervals;

    bool empty() const { return intervals.empty(); }
    bool contains(int node) const;
    /// Free nodes: region nodes excluding the outer Dirichlet node.
    std::vector<int> free_nodes(const Grid& grid) const;
};

/// Validates and normalizes raw intervals (sorts, requires disjointness and
/// at least 3 interior nodes per interval).
Region make_region(std::vector<std::pair<int, int>> intervals);

/// Region from [t_lo, t_hi] pairs in t-units, snapped outward to grid nodes.
Region region_from_t(const Grid& grid,
                     const std::vector<std::pair<double, double>>& spans);

struct EigenResult {
    double lambda = 0.0;
    Field ground_state; ///< q-weighted L2-normalized, chosen non-negative
    int iterations = 0;
};

/// Local first conformal eigenvalue of V: smallest generalized eigenvalue of
/// the G form restricted to fields vanishing outside V, against the
/// q-weighted L2 product. Shifted inverse iteration per interval (shift
/// Scal_min - 1, which keeps the shifted operator positive definite),
/// followed by Rayleigh-quotient polishing. Throws SpectralFailure with the
/// last eigenresidual on non-convergence.
EigenResult lambda_min(const ProblemPSC& prob, const Region& V,
                       MetricChoice metric = MetricChoice::background);

struct YamabeResult {
    double yamabe = 0.0; ///< achieved quotient, an upper bound on Y_g(V)
    Field minimizer;
    bool converged = true;
    int iterations = 0;
};

/// Approximate minimizer of the Yamabe quotient over F(V) via projected
/// gradient descent on the unit L^N sphere with Armijo backtracking,
/// initialized at the lambda_min ground state. A line-search stall returns
/// the best iterate flagged non-converged instead of throwing.
YamabeResult yamabe_min(const ProblemPSC& prob, const Region& V,
                        int max_iter = 2000, double tol = 1e-10);

struct SignAgreement {
    int sign_lambda = 0;
    int sign_yamabe = 0;
    bool agree = false;
    double lambda = 0.0;
    double yamabe_upper = 0.0;
    double tol_sign = 0.0;
};

/// Sign classification of lambda_g(V) and Y_g(V) with a scale-aware dead
/// band tol_sign = 1e-8 |Scal|_max. Negativity of Y is certified by the
/// search witness (a trial field with G < 0); nonnegative signs are
/// delegated to lambda, which is the reliable sign oracle.
SignAgreement sign_agreement(const ProblemPSC& prob, const Region& V);

/// Computes the Yamabe quotient of u in the conformal metric h = phi^{N-2} g
/// (via the transformed curvature and measure phi^N dmu) and of phi*u in the
/// background metric. The two agree up to discretization error; phi == 1
/// reproduces the background quotient bit-exactly.
std::pair<double, double> conformal_invariance_check(const ProblemPSC& prob,
                                                     const Field& phi,
                                                     const Field& u);

} // namespace cclab
