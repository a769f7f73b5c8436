#include <cmath>
#include <random>

#include "doctest.h"

#include "cclab/errors.hpp"
#include "cclab/tridiag.hpp"

using namespace cclab;

TEST_CASE("tridiagonal LU solves random indefinite systems") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    int solved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 50);
        TriDiag A;
        A.diag.resize(n);
        A.lower.resize(n - 1);
        A.upper.resize(n - 1);
        for (int i = 0; i < n; ++i) A.diag[i] = U(rng);
        for (int i = 0; i < n - 1; ++i) {
            A.lower[i] = U(rng);
            A.upper[i] = U(rng);
        }
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) x[i] = U(rng);
        std::vector<double> b = tridiag_apply(A, x);
        TriDiagLU lu(A);
        if (lu.min_abs_pivot() < 1e-8) continue; // skipped: near-singular draw
        std::vector<double> y = lu.solve(b);
        double err = 0.0;
        for (int i = 0; i < n; ++i) err = std::fmax(err, std::abs(y[i] - x[i]));
        CHECK(err < 1e-7);
        ++solved;
    }
    CHECK(solved > 250);
}

TEST_CASE("tridiagonal LU flags singular matrices") {
    TriDiag A;
    A.diag = {1.0, 2.0, 0.0};
    A.lower = {0.0, 0.0};
    A.upper = {0.0, 0.0};
    CHECK_THROWS_AS(TriDiagLU{A}, SolverError);
}

TEST_CASE("iterative refinement tightens stiff solves") {
    // diagonally huge system mimicking the c_n/h^2 stencil scale
    const int n = 2000;
    TriDiag A;
    A.diag.assign(n, 2.0e8 + 30.0);
    A.lower.assign(n - 1, -1.0e8);
    A.upper.assign(n - 1, -1.0e8);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.01 * i);
    std::vector<double> b = tridiag_apply(A, x);
    TriDiagLU lu(A);
    std::vector<double> y = lu.solve_refined(A, b);
    std::vector<double> r = tridiag_apply(A, y);
    double res = 0.0;
    for (int i = 0; i < n; ++i) res = std::fmax(res, std::abs(r[i] - b[i]));
    CHECK(res < 1e-4); // absolute, against entries of size 1e8
}
