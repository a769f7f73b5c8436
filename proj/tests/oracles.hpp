#pragma once

// Test-side oracles, independent of the implementation paths they check:
// a dense eigensolver for the restricted conformal-Laplacian form, smooth
// random field generators, and closed-form quadrature references.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "cclab/assemble.hpp"
#include "cclab/functionals.hpp"
#include "cclab/spectra.hpp"

namespace cclab::testing {

/// Smallest eigenvalue of the restricted operator via a dense symmetric
/// eigensolve of D^{1/2} A D^{-1/2} (D the cell masses). Brute force; keep
/// the node count moderate.
inline double dense_lambda_min(const ProblemPSC& prob, const Region& V) {
    const Grid& grid = *prob.grid;
    std::vector<int> free = V.free_nodes(grid);
    const int n = static_cast<int>(free.size());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [a0, b0] : V.intervals) {
        const int a = a0;
        const int b = std::min(b0, grid.m - 1);
        TriDiag A = assemble_rows(grid, prob.geom, prob.background_scal.v, a, b);
        // locate offset of this interval in the free-node list
        int off = 0;
        while (free[off] != a) ++off;
        for (int i = 0; i <= b - a; ++i) {
            const double qi = grid.q[a + i];
            S(off + i, off + i) = A.diag[i];
            if (i < b - a) {
                const double qj = grid.q[a + i + 1];
                const double sym =
                    A.upper[i] * std::sqrt(qi) / std::sqrt(qj);
                S(off + i, off + i + 1) = sym;
                S(off + i + 1, off + i) = sym;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    return es.eigenvalues()(0);
}

/// Smooth random field: a few exponential bumps with seeded parameters,
/// vanishing outside [t_lo, t_hi].
inline Field smooth_random_field(GridPtr grid, std::mt19937_64& rng,
                                 double t_lo, double t_hi, int bumps = 3,
                                 double amp = 1.0) {
    std::uniform_real_distribution<double> C(t_lo + 0.5, t_hi - 0.5);
    std::uniform_real_distribution<double> W(0.4, (t_hi - t_lo) / 2.0);
    std::uniform_real_distribution<double> A(-amp, amp);
    Field u = make_field(grid, 0.0);
    for (int b = 0; b < bumps; ++b) {
        const double c = C(rng), w = W(rng), a = A(rng);
        for (int i = 0; i < u.size(); ++i) {
            const double x = (u.grid->t[i] - c) / w;
            if (std::abs(x) < 1.0 && u.grid->t[i] > t_lo && u.grid->t[i] < t_hi)
                u[i] += a * std::exp(1.0 - 1.0 / (1.0 - x * x));
        }
    }
    return u;
}

/// \int_0^T sinh^2 t dt in closed form (n = 3 volume).
inline double sinh2_integral(double T) {
    return 0.5 * (std::sinh(T) * std::cosh(T) - T);
}

/// sinh via its power series; stdlib-independent reference.
inline double sinh_series(double t) {
    double term = t, sum = t;
    for (int k = 1; k < 40; ++k) {
        term *= t * t / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

inline double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i)
        m = std::fmax(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const Field& a) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::fmax(m, std::abs(a[i]));
    return m;
}

} // namespace cclab::testing
