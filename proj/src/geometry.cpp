#include "cclab/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cclab/grid.hpp"

namespace cclab {

double Geometry::weight(double t) const {
    return std::pow(std::sinh(t), n - 1);
}

double Geometry::rho(double t) const { return std::exp(-t); }

Geometry make_hyperbolic(int n, double t_max) {
    if (n < 3)
        throw std::invalid_argument(
            "make_hyperbolic: n must be >= 3 (conformal exponent undefined "
            "for n = " + std::to_string(n) + ")");
    if (!(t_max > 0.0))
        throw std::invalid_argument("make_hyperbolic: t_max must be positive");
    Geometry g;
    g.n = n;
    g.crit_exp = 2.0 * n / (n - 2);
    g.conf_coeff = 4.0 * (n - 1) / (n - 2);
    g.t_max = t_max;
    const double scal0 = -static_cast<double>(n) * (n - 1);
    g.scal = [scal0](double) { return scal0; };
    return g;
}

Geometry make_hyperbolic(int n, double t_max,
                         std::function<double(double)> scal_perturbation) {
    Geometry g = make_hyperbolic(n, t_max);
    const double scal0 = -static_cast<double>(n) * (n - 1);
    g.scal = [scal0, pert = std::move(scal_perturbation)](double t) {
        return scal0 + pert(t);
    };
    return g;
}

Field conformal_scal(const Geometry& geom, const Grid& grid, const Field& phi) {
    if (phi.size() != grid.num_nodes())
        throw std::invalid_argument("conformal_scal: field/grid size mismatch");
    for (int i = 0; i < phi.size(); ++i)
        if (!(phi[i] > 0.0))
            throw std::domain_error("conformal_scal: non-positive phi at node " +
                                    std::to_string(i) +
                                    " (t = " + std::to_string(grid.t[i]) + ")");

    Field lap = laplacian_apply(grid, geom, phi);
    Field out = phi;
    for (int i = 0; i < out.size(); ++i) {
        const double s = geom.scal(grid.t[i]);
        out[i] = std::pow(phi[i], 1.0 - geom.crit_exp) *
                 (-geom.conf_coeff * lap[i] + s * phi[i]);
    }
    return out;
}

} // namespace cclab
