#include "cclab/tridiag.hpp"

#include <cmath>
#include <cstdlib>

#include "cclab/errors.hpp"

namespace cclab {

std::vector<double> tridiag_apply(const TriDiag& a,
                                  const std::vector<double>& x) {
    const int n = a.size();
    std::vector<double> y(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = a.diag[i] * x[i];
        if (i > 0) s += a.lower[i - 1] * x[i - 1];
        if (i < n - 1) s += a.upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

TriDiagLU::TriDiagLU(const TriDiag& a) : n_(a.size()) {
    if (n_ <= 0) throw SolverError("tridiagonal factorization of empty matrix");
    if (static_cast<int>(a.lower.size()) != n_ - 1 ||
        static_cast<int>(a.upper.size()) != n_ - 1)
        throw SolverError("tridiagonal band sizes inconsistent");

    d0_.assign(static_cast<size_t>(n_), 0.0);
    d1_.assign(static_cast<size_t>(n_), 0.0);
    d2_.assign(static_cast<size_t>(n_), 0.0);
    l_.assign(static_cast<size_t>(n_), 0.0);
    swapped_.assign(static_cast<size_t>(n_), 0);

    for (int i = 0; i < n_; ++i) d0_[i] = a.diag[i];
    for (int i = 0; i < n_ - 1; ++i) d1_[i] = a.upper[i];

    double minpiv = HUGE_VAL;
    for (int i = 0; i < n_ - 1; ++i) {
        double sub = a.lower[i]; // entry (i+1, i)
        if (std::abs(sub) > std::abs(d0_[i])) {
            // swap rows i and i+1
            swapped_[i] = 1;
            std::swap(d0_[i], sub); // d0_[i] <- lower, sub <- old pivot row diag
            double t1 = d1_[i];
            d1_[i] = d0_[i + 1];
            d0_[i + 1] = t1;
            d2_[i] = d1_[i + 1];
            d1_[i + 1] = 0.0;
        }
        if (d0_[i] == 0.0)
            throw SolverError("singular tridiagonal matrix (zero pivot)");
        double mult = sub / d0_[i];
        l_[i] = mult;
        d0_[i + 1] -= mult * d1_[i];
        if (i + 1 < n_ - 1) d1_[i + 1] -= mult * d2_[i];
        minpiv = std::fmin(minpiv, std::abs(d0_[i]));
    }
    if (d0_[n_ - 1] == 0.0)
        throw SolverError("singular tridiagonal matrix (zero pivot)");
    minpiv = std::fmin(minpiv, std::abs(d0_[n_ - 1]));
    min_abs_pivot_ = minpiv;
}

std::vector<double> TriDiagLU::solve(const std::vector<double>& rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw SolverError("tridiagonal solve: rhs size mismatch");
    std::vector<double> x = rhs;
    for (int i = 0; i < n_ - 1; ++i) {
        if (swapped_[i]) std::swap(x[i], x[i + 1]);
        x[i + 1] -= l_[i] * x[i];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double s = x[i];
        if (i + 1 < n_) s -= d1_[i] * x[i + 1];
        if (i + 2 < n_) s -= d2_[i] * x[i + 2];
        x[i] = s / d0_[i];
    }
    return x;
}

std::vector<double> TriDiagLU::solve_refined(
    const TriDiag& a, const std::vector<double>& rhs) const {
    std::vector<double> x = solve(rhs);
    std::vector<double> ax = tridiag_apply(a, x);
    std::vector<double> r(rhs.size());
    for (size_t i = 0; i < rhs.size(); ++i) r[i] = rhs[i] - ax[i];
    std::vector<double> dx = solve(r);
    for (size_t i = 0; i < rhs.size(); ++i) x[i] += dx[i];
    return x;
}

} // namespace cclab
