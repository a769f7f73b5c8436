#include "cclab/manufactured.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cclab {

namespace {
inline double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}
} // namespace

double ManufacturedPSC::phi(double t) const { return 1.0 + amp * sech2(t); }

double ManufacturedPSC::dphi(double t) const {
    return -2.0 * amp * sech2(t) * std::tanh(t);
}

double ManufacturedPSC::lap_phi(int n, double t) const {
    // coth(t) * phi'(t) = -2 amp sech^2(t) exactly (tanh * coth == 1), so the
    // coordinate singularity at t = 0 cancels analytically.
    const double s2 = sech2(t);
    const double th = std::tanh(t);
    const double phipp = 4.0 * amp * s2 * th * th - 2.0 * amp * s2 * s2;
    return phipp + (n - 1) * (-2.0 * amp * s2);
}

double ManufacturedPSC::s_hat(const Geometry& geom, double t) const {
    const double p = phi(t);
    return std::pow(p, 1.0 - geom.crit_exp) *
           (-geom.conf_coeff * lap_phi(geom.n, t) + geom.scal(t) * p);
}

Field manufactured_phi(const ManufacturedPSC& mms, GridPtr grid) {
    return sample(std::move(grid), [&](double t) { return mms.phi(t); });
}

ProblemPSC manufactured_problem(const ManufacturedPSC& mms,
                                const Geometry& geom, GridPtr grid) {
    Field s = sample(grid, [&](double t) { return mms.s_hat(geom, t); });
    return make_problem(geom, std::move(grid), std::move(s), 1.5);
}

namespace {
// even pair of bumps keeps phi'(0) = 0 exactly, which the radial Laplacian
// requires at the center
inline double pair_s(double t, double c, double w) {
    return sech2((t - c) / w) + sech2((t + c) / w);
}
inline double pair_ds(double t, double c, double w) {
    auto d = [&](double x) { return -2.0 * sech2(x) * std::tanh(x); };
    return (d((t - c) / w) + d((t + c) / w)) / w;
}
inline double pair_dds(double t, double c, double w) {
    auto dd = [&](double x) {
        const double s2 = sech2(x);
        const double th = std::tanh(x);
        return 4.0 * s2 * th * th - 2.0 * s2 * s2;
    };
    return (dd((t - c) / w) + dd((t + c) / w)) / (w * w);
}
} // namespace

double ManufacturedLich::phi(double t) const {
    return 1.0 + amp * pair_s(t, center, width);
}

double ManufacturedLich::dphi(double t) const {
    return amp * pair_ds(t, center, width);
}

double ManufacturedLich::lap_phi(int n, double t) const {
    const double pp = amp * pair_dds(t, center, width);
    if (t < 1e-8) return n * pp; // even data: coth(t) phi' -> phi''(0)
    return pp + (n - 1) * (std::cosh(t) / std::sinh(t)) * dphi(t);
}

double ManufacturedLich::a_squared(const Geometry& geom, double t) const {
    const double p = phi(t);
    const double n = geom.n;
    const double tau2_coeff = (n - 1.0) * n; // tau == n
    const double lhs = -geom.conf_coeff * lap_phi(geom.n, t) + geom.scal(t) * p +
                       tau2_coeff * std::pow(p, geom.crit_exp - 1.0);
    return std::pow(p, geom.crit_exp + 1.0) * lhs;
}

Field manufactured_lich_phi(const ManufacturedLich& mms, GridPtr grid) {
    return sample(std::move(grid), [&](double t) { return mms.phi(t); });
}

LichData manufactured_lich_data(const ManufacturedLich& mms,
                                const Geometry& geom, GridPtr grid) {
    Field tau = make_field(grid, static_cast<double>(geom.n));
    Field a = make_field(grid, 0.0);
    for (int i = 0; i < a.size(); ++i) {
        const double a2 = mms.a_squared(geom, grid->t[i]);
        if (a2 < 0.0)
            throw std::invalid_argument(
                "manufactured_lich_data: induced A^2 negative at t = " +
                std::to_string(grid->t[i]) +
                "; adjust the draft profile (values are never clipped)");
        a[i] = std::sqrt(a2);
    }
    return make_lich_data(geom, std::move(grid), std::move(tau), std::move(a));
}

} // namespace cclab
