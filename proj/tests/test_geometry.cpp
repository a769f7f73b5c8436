#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "cclab/geometry.hpp"
#include "cclab/grid.hpp"
#include "cclab/manufactured.hpp"
#include "oracles.hpp"

using namespace cclab;
using namespace cclab::testing;

TEST_CASE("hyperbolic model constants") {
    Geometry g3 = make_hyperbolic(3, 20.0);
    CHECK(g3.crit_exp == 6.0);
    CHECK(g3.conf_coeff == 8.0); // 4(n-1)/(n-2)
    CHECK(g3.scal(0.7) == -6.0);

    Geometry g4 = make_hyperbolic(4, 20.0);
    CHECK(g4.crit_exp == 4.0);
    CHECK(g4.conf_coeff == 6.0);
    CHECK(g4.scal(3.0) == -12.0);

    // N (n-2) = 2n
    for (int n = 3; n <= 9; ++n) {
        Geometry g = make_hyperbolic(n, 10.0);
        CHECK(std::abs(g.crit_exp * (n - 2) - 2.0 * n) <
              1e-15 * (2.0 * n));
    }

    CHECK_THROWS_AS(make_hyperbolic(2, 20.0), std::invalid_argument);
    CHECK_THROWS_AS(make_hyperbolic(3, -1.0), std::invalid_argument);
}

TEST_CASE("weight and defining function") {
    Geometry g = make_hyperbolic(3, 20.0);
    CHECK(g.weight(0.0) == 0.0);
    // series oracle for sinh^2(1)
    const double s = sinh_series(1.0);
    CHECK(g.weight(1.0) == doctest::Approx(s * s).epsilon(1e-14));
    CHECK(g.weight(1.0) == doctest::Approx(1.3810978455418157).epsilon(1e-12));

    double prev = g.rho(0.0);
    CHECK(prev == 1.0);
    for (double t = 0.5; t <= 20.0; t += 0.5) {
        const double r = g.rho(t);
        CHECK(r > 0.0);
        CHECK(r < prev);
        prev = r;
    }

    // default model: Scal + n(n-1) == 0 at every node
    auto grid = make_grid(g, 240);
    for (int i = 0; i <= grid->m; ++i)
        CHECK(g.scal(grid->t[i]) + 6.0 == 0.0);
}

TEST_CASE("conformal_scal identity factor is bit-exact") {
    Geometry g = make_hyperbolic(3, 18.0);
    auto grid = make_grid(g, 300);
    Field one = make_field(grid, 1.0);
    Field s = conformal_scal(g, *grid, one);
    for (int i = 0; i <= grid->m; ++i)
        CHECK(s[i] == g.scal(grid->t[i]));
}

TEST_CASE("conformal_scal homothety") {
    // phi == c: Lap phi = 0 exactly on the stencil, so
    // Shat = c^{2-N} Scal; for n = 3, c = 2 that is Scal/16.
    Geometry g = make_hyperbolic(3, 18.0);
    auto grid = make_grid(g, 300);
    Field two = make_field(grid, 2.0);
    Field s = conformal_scal(g, *grid, two);
    for (int i = 0; i <= grid->m; ++i)
        CHECK(s[i] == doctest::Approx(-6.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("conformal_scal rejects non-positive factors") {
    Geometry g = make_hyperbolic(3, 18.0);
    auto grid = make_grid(g, 240);
    Field phi = make_field(grid, 1.0);
    phi[137] = 0.0;
    CHECK_THROWS_AS(conformal_scal(g, *grid, phi), std::domain_error);
    phi[137] = -0.3;
    CHECK_THROWS_WITH_AS(conformal_scal(g, *grid, phi),
                         doctest::Contains("node 137"), std::domain_error);
}

TEST_CASE("conformal_scal converges to the analytic transformation law") {
    Geometry g = make_hyperbolic(3, 20.0);
    ManufacturedPSC mms; // phi* = 1 + 0.1 sech^2(t), even with phi*'(0) = 0
    double prev_err = 0.0;
    for (int m : {500, 1000, 2000}) {
        auto grid = make_grid(g, m);
        Field phi = manufactured_phi(mms, grid);
        Field s = conformal_scal(g, *grid, phi);
        double err = 0.0;
        for (int i = 0; i <= grid->m; ++i)
            err = std::fmax(err, std::abs(s[i] - mms.s_hat(g, grid->t[i])));
        if (prev_err > 0.0) {
            const double order = std::log2(prev_err / err);
            CHECK(order > 1.8);
            CHECK(order < 2.2);
        }
        prev_err = err;
    }
}
