#include "cclab/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cclab {

double lp_norm(const Grid& grid, const Field& u, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must be >= 1");
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("lp_norm: field/grid size mismatch");
    double s = 0.0;
    for (int i = 0; i < u.size(); ++i)
        s += grid.q[i] * std::pow(std::abs(u[i]), p);
    return std::pow(s, 1.0 / p);
}

double ln_norm(const Grid& grid, const Geometry& geom, const Field& u) {
    return lp_norm(grid, u, geom.crit_exp);
}

double weighted_x_norm(const Grid& grid, const Geometry& geom, const Field& u,
                       double delta, double p, double window) {
    if (!(p >= 1.0))
        throw std::invalid_argument("weighted_x_norm: p must be >= 1");
    if (!(window >= grid.h))
        throw std::invalid_argument(
            "weighted_x_norm: window smaller than the mesh width");
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("weighted_x_norm: field/grid size mismatch");

    const int m = grid.m;
    std::vector<double> prefix(static_cast<size_t>(m) + 2, 0.0);
    for (int i = 0; i <= m; ++i)
        prefix[i + 1] = prefix[i] + grid.q[i] * std::pow(std::abs(u[i]), p);

    const int k = static_cast<int>(std::floor(window / grid.h + 1e-12));
    double best = 0.0;
    for (int i = 0; i <= m; ++i) {
        const int lo = std::max(0, i - k);
        const int hi = std::min(m, i + k);
        const double ball = prefix[hi + 1] - prefix[lo];
        const double val =
            std::pow(geom.rho(grid.t[i]), -delta) * std::pow(ball, 1.0 / p);
        best = std::fmax(best, val);
    }
    return best;
}

DecayFit decay_fit(const Grid& grid, const Field& u, double t_lo, double t_hi) {
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("decay_fit: field/grid size mismatch");
    if (!(t_lo < t_hi) || t_hi > grid.t_max - 1.0 + 1e-12)
        throw std::invalid_argument(
            "decay_fit: need t_lo < t_hi <= T - 1, got [" +
            std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]");

    int lo = static_cast<int>(std::ceil(t_lo / grid.h - 1e-9));
    int hi = static_cast<int>(std::floor(t_hi / grid.h + 1e-9));
    lo = std::max(lo, 0);
    hi = std::min(hi, grid.m);
    const int cnt = hi - lo + 1;
    if (cnt < 8)
        throw std::invalid_argument("decay_fit: window holds fewer than 8 nodes");

    double st = 0.0, sy = 0.0;
    for (int i = lo; i <= hi; ++i) {
        if (!(u[i] > 0.0))
            throw std::domain_error(
                "decay_fit: non-positive data at t = " + std::to_string(grid.t[i]) +
                "; pass |values| with a floor");
        st += grid.t[i];
        sy += std::log(u[i]);
    }
    const double mt = st / cnt, my = sy / cnt;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (int i = lo; i <= hi; ++i) {
        const double dt = grid.t[i] - mt;
        const double dy = std::log(u[i]) - my;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    DecayFit fit;
    fit.t_lo = grid.t[lo];
    fit.t_hi = grid.t[hi];
    const double slope = sty / stt;
    fit.exponent = -slope;
    fit.r2 = (syy > 0.0) ? (sty * sty) / (stt * syy) : 1.0;
    return fit;
}

} // namespace cclab
