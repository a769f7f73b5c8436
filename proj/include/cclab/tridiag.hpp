#pragma once

#include <vector>

namespace cclab {

/// Tridiagonal matrix in diagonal storage: row i couples lower[i-1], diag[i],
/// upper[i].
struct TriDiag {
    std::vector<double> lower; ///< size n-1
    std::vector<double> diag;  ///< size n
    std::vector<double> upper; ///< size n-1

    int size() const { return static_cast<int>(diag.size()); }
};

std::vector<double> tridiag_apply(const TriDiag& a,
                                  const std::vector<double>& x);

/// LU factorization of a tridiagonal matrix with partial pivoting (row swaps
/// introduce one extra superdiagonal). Stable for indefinite systems, which
/// show up in Newton steps away from the solution and in Rayleigh-shifted
/// eigen solves.
class TriDiagLU {
public:
    explicit TriDiagLU(const TriDiag& a);

    /// Solves A x = rhs. Throws SolverError on a numerically singular pivot.
    std::vector<double> solve(const std::vector<double>& rhs) const;

    /// Solve followed by one pass of iterative refinement against the
    /// original matrix; takes the fixed-point floor of stationary iterations
    /// down to the residual-evaluation level.
    std::vector<double> solve_refined(const TriDiag& a,
                                      const std::vector<double>& rhs) const;

    double min_abs_pivot() const { return min_abs_pivot_; }

private:
    int n_ = 0;
    std::vector<double> d0_;  // main diagonal of U
    std::vector<double> d1_;  // first superdiagonal of U
    std::vector<double> d2_;  // second superdiagonal of U (pivot fill-in)
    std::vector<double> l_;   // multipliers
    std::vector<char> swapped_;
    double min_abs_pivot_ = 0.0;
};

} // namespace cclab
