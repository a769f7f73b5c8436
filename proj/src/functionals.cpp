#include "cclab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "cclab/norms.hpp"

namespace cclab {

namespace {

double max_abs(const Field& f) {
    double m = 0.0;
    for (int i = 0; i < f.size(); ++i) m = std::fmax(m, std::abs(f[i]));
    return m;
}

// (u+1)^2 - 1 without cancellation at far nodes where u is tiny.
inline double sq1(double u) { return u * (u + 2.0); }

// |x+1|^N - 1, stable near both roots x = 0 and x = -2.
inline double pow_abs1_minus1(double x, double N) {
    const double a = 1.0 + x;
    if (a > 0.0) return std::expm1(N * std::log1p(x));
    if (a == 0.0) return -1.0;
    return std::expm1(N * std::log(-a));
}

// sgn(x) |x|^{N-1}
inline double signed_pow(double x, double Nm1) {
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(x), Nm1), x);
}

// Composite Simpson over node values on index range [a, b]; falls back to
// a 3/8 tail when the cell count is odd. Fourth order for smooth data.
double simpson(const std::vector<double>& f, int a, int b, double h) {
    const int cells = b - a;
    if (cells <= 0) return 0.0;
    if (cells == 1) return 0.5 * h * (f[a] + f[b]);
    if (cells == 2) return h / 3.0 * (f[a] + 4.0 * f[a + 1] + f[b]);
    int b0 = b;
    double tail = 0.0;
    if (cells % 2 != 0) {
        b0 = b - 3;
        tail = 3.0 * h / 8.0 *
               (f[b - 3] + 3.0 * f[b - 2] + 3.0 * f[b - 1] + f[b]);
        if (b0 <= a) return tail + simpson(f, a, b0, h);
    }
    double s = f[a] + f[b0];
    for (int i = a + 1; i < b0; i += 2) s += 4.0 * f[i];
    for (int i = a + 2; i < b0; i += 2) s += 2.0 * f[i];
    return h / 3.0 * s + tail;
}

const Field& scal_of(const ProblemPSC& prob, MetricChoice metric) {
    return metric == MetricChoice::background ? prob.background_scal
                                              : prob.tilde_scal;
}

} // namespace

ProblemPSC make_problem(const Geometry& geom, GridPtr grid, Field target_scal,
                        double delta) {
    Field tilde = sample(grid, geom.scal);
    return make_problem(geom, std::move(grid), std::move(target_scal),
                        std::move(tilde), delta);
}

ProblemPSC make_problem(const Geometry& geom, GridPtr grid, Field target_scal,
                        Field tilde_scal, double delta) {
    ProblemPSC p;
    p.geom = geom;
    p.grid = std::move(grid);
    p.background_scal = sample(p.grid, geom.scal);
    if (target_scal.size() != p.grid->num_nodes() ||
        tilde_scal.size() != p.grid->num_nodes())
        throw std::invalid_argument("make_problem: field/grid size mismatch");

    const double scale = std::fmax(1.0, max_abs(p.background_scal));
    for (int i = 0; i < target_scal.size(); ++i) {
        if (target_scal[i] > 1e-12 * scale)
            throw std::invalid_argument(
                "make_problem: prescribed curvature positive at node " +
                std::to_string(i) + " (value " +
                std::to_string(target_scal[i]) + ")");
        if (!std::isfinite(target_scal[i]) || !std::isfinite(tilde_scal[i]))
            throw std::invalid_argument("make_problem: non-finite curvature data");
    }
    if (!(delta > 0.0) || !(delta < geom.n))
        throw std::invalid_argument("make_problem: delta must lie in (0, n)");
    p.target_scal = std::move(target_scal);
    p.tilde_scal = std::move(tilde_scal);
    p.delta = delta;
    return p;
}

double G_eval(const ProblemPSC& prob, const Field& u, MetricChoice metric) {
    const Grid& grid = *prob.grid;
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("G_eval: field/grid size mismatch");
    const Field& scal = scal_of(prob, metric);
    double mass = 0.0;
    for (int i = 0; i < u.size(); ++i)
        mass += grid.q[i] * (scal[i] * (u[i] * u[i]));
    return prob.geom.conf_coeff * energy_inner(grid, u, u) + mass;
}

double rayleigh_q(const ProblemPSC& prob, const Field& u, MetricChoice metric) {
    const double nrm = lp_norm(*prob.grid, u, 2.0);
    if (nrm == 0.0)
        throw std::invalid_argument("rayleigh_q: quotient undefined for u == 0");
    return G_eval(prob, u, metric) / (nrm * nrm);
}

double yamabe_q(const ProblemPSC& prob, const Field& u, MetricChoice metric) {
    const double nrm = ln_norm(*prob.grid, prob.geom, u);
    if (nrm == 0.0)
        throw std::invalid_argument("yamabe_q: quotient undefined for u == 0");
    return G_eval(prob, u, metric) / (nrm * nrm);
}

double poincare_eps0(const Geometry& geom, double t) {
    const double c = geom.n - 1.0;
    return c * c / std::expm1(2.0 * t);
}

std::pair<double, double> poincare_identity_check(const ProblemPSC& prob,
                                                  const Field& u) {
    const Grid& grid = *prob.grid;
    const Geometry& geom = prob.geom;
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("poincare_identity_check: size mismatch");

    int i0 = -1, i1 = -1;
    for (int i = 0; i <= grid.m; ++i)
        if (u[i] != 0.0) {
            if (i0 < 0) i0 = i;
            i1 = i;
        }
    if (i0 < 0) return {0.0, 0.0};
    if (i0 < 3 || i1 > grid.m - 3)
        throw std::invalid_argument(
            "poincare_identity_check: support touches t = 0 or t = T");

    const int a = i0 - 2, b = i1 + 2;
    const double h = grid.h;
    const double dexp = 0.5 * (geom.n - 1);

    // Fourth-order first differences; u vanishes outside [i0, i1].
    auto d4 = [&](const std::vector<double>& f, int i) {
        return (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) /
               (12.0 * h);
    };

    std::vector<double> uu(u.v), vv(static_cast<size_t>(grid.m) + 1, 0.0);
    for (int i = i0; i <= i1; ++i)
        vv[i] = std::exp(dexp * grid.t[i]) * u[i]; // v = rho^{-d} u

    std::vector<double> flhs(static_cast<size_t>(grid.m) + 1, 0.0);
    std::vector<double> fgrad(static_cast<size_t>(grid.m) + 1, 0.0);
    std::vector<double> fmass(static_cast<size_t>(grid.m) + 1, 0.0);
    for (int i = a; i <= b; ++i) {
        const double du = d4(uu, i);
        const double dv = d4(vv, i);
        const double rho2d = std::exp(-2.0 * dexp * grid.t[i]);
        const double K =
            0.25 * (geom.n - 1.0) * (geom.n - 1.0) + poincare_eps0(geom, grid.t[i]);
        flhs[i] = du * du * grid.w[i];
        fgrad[i] = rho2d * dv * dv * grid.w[i];
        fmass[i] = K * u[i] * u[i] * grid.w[i];
    }
    const double lhs = simpson(flhs, a, b, h);
    const double rhs = simpson(fgrad, a, b, h) + simpson(fmass, a, b, h);
    return {lhs, rhs};
}

double h_eval(double x, double N) {
    return (2.0 / N) * pow_abs1_minus1(x, N) - sq1(x);
}

double F_eval(const ProblemPSC& prob, const Field& u) {
    const Grid& grid = *prob.grid;
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("F_eval: field/grid size mismatch");
    const double N = prob.geom.crit_exp;
    double mass = 0.0;
    for (int i = 0; i < u.size(); ++i) {
        mass += grid.q[i] * (prob.tilde_scal[i] * sq1(u[i]) -
                             (2.0 / N) * prob.target_scal[i] *
                                 pow_abs1_minus1(u[i], N));
    }
    return prob.geom.conf_coeff * energy_inner(grid, u, u) + mass;
}

Field F_grad(const ProblemPSC& prob, const Field& u) {
    const Grid& grid = *prob.grid;
    if (u.size() != grid.num_nodes())
        throw std::invalid_argument("F_grad: field/grid size mismatch");
    const double N = prob.geom.crit_exp;
    Field lap = laplacian_apply(grid, prob.geom, u);
    Field g = make_field(prob.grid, 0.0);
    for (int i = 0; i < grid.m; ++i) {
        const double r = -prob.geom.conf_coeff * lap[i] +
                         prob.tilde_scal[i] * (u[i] + 1.0) -
                         prob.target_scal[i] * signed_pow(u[i] + 1.0, N - 1.0);
        g[i] = 2.0 * grid.q[i] * r;
    }
    g[grid.m] = 0.0; // Dirichlet-fixed
    return g;
}

std::vector<double> coercivity_witness(const ProblemPSC& prob,
                                       const Field& u_neg,
                                       const std::vector<double>& s_list) {
    const Grid& grid = *prob.grid;
    if (u_neg.size() != grid.num_nodes())
        throw std::invalid_argument("coercivity_witness: size mismatch");
    const double tol_zero = 1e-12 * std::fmax(1.0, max_abs(prob.background_scal));
    for (int i = 0; i < u_neg.size(); ++i)
        if (u_neg[i] != 0.0 && std::abs(prob.target_scal[i]) > tol_zero)
            throw std::invalid_argument(
                "coercivity_witness: witness not supported in the zero set "
                "(node " + std::to_string(i) + ")");
    const double g = G_eval(prob, u_neg, MetricChoice::tilde);
    if (!(g < 0.0))
        throw std::invalid_argument(
            "coercivity_witness: witness has G(u) = " + std::to_string(g) +
            " >= 0");

    std::vector<double> out;
    out.reserve(s_list.size());
    for (double s : s_list) {
        Field su = u_neg;
        for (int i = 0; i < su.size(); ++i) su[i] *= s;
        out.push_back(F_eval(prob, su));
    }
    return out;
}

double estimate_eta(const ProblemPSC& prob, int samples) {
    const Grid& grid = *prob.grid;
    std::mt19937_64 rng(0x5eedu);
    std::uniform_real_distribution<double> ctr(1.0, grid.t_max - 2.0);
    std::uniform_real_distribution<double> wid(0.3, 3.0);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);

    struct Pair {
        double ratio;
        double quot;
    };
    std::vector<Pair> pts;
    const double N = prob.geom.crit_exp;
    for (int s = 0; s < samples; ++s) {
        Field u = make_field(prob.grid, 0.0);
        const int bumps = 1 + static_cast<int>(rng() % 3);
        for (int bmp = 0; bmp < bumps; ++bmp) {
            const double c = ctr(rng), w = wid(rng), a = amp(rng);
            for (int i = 0; i <= grid.m; ++i) {
                const double x = (grid.t[i] - c) / w;
                if (std::abs(x) < 1.0)
                    u[i] += a * std::exp(1.0 - 1.0 / (1.0 - x * x));
            }
        }
        u[grid.m] = 0.0;
        double num = 0.0, den = 0.0, l2 = 0.0;
        for (int i = 0; i <= grid.m; ++i) {
            const double p = std::pow(std::abs(u[i]), N);
            num += grid.q[i] * std::abs(prob.target_scal[i]) * p;
            den += grid.q[i] * p;
            l2 += grid.q[i] * u[i] * u[i];
        }
        if (den <= 0.0 || l2 <= 0.0) continue;
        pts.push_back({num / den, G_eval(prob, u, MetricChoice::tilde) / l2});
    }
    std::sort(pts.begin(), pts.end(),
              [](const Pair& a, const Pair& b) { return a.ratio < b.ratio; });
    double eta = 0.0;
    for (const Pair& p : pts) {
        if (p.quot <= 0.0) break;
        eta = p.ratio;
    }
    return eta;
}

} // namespace cclab
