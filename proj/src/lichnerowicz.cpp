#include "cclab/lichnerowicz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cclab/assemble.hpp"
#include "cclab/errors.hpp"
#include "cclab/tridiag.hpp"

namespace cclab {

namespace {

double max_abs(const Field& f) {
    double m = 0.0;
    for (int i = 0; i < f.size(); ++i) m = std::fmax(m, std::abs(f[i]));
    return m;
}

// ((n-1) tau^2)/n, associated so that tau == n gives n(n-1) exactly
inline double mean_curv_coeff(int n, double tau) {
    return ((n - 1.0) * (tau * tau)) / n;
}

} // namespace

LichData make_lich_data(const Geometry& geom, GridPtr grid, Field tau,
                        Field amplitude) {
    if (tau.size() != grid->num_nodes() || amplitude.size() != grid->num_nodes())
        throw std::invalid_argument("make_lich_data: field/grid size mismatch");
    for (int i = 0; i < tau.size(); ++i) {
        if (tau[i] < 0.0)
            throw std::invalid_argument("make_lich_data: tau negative at node " +
                                        std::to_string(i));
        if (amplitude[i] < 0.0)
            throw std::invalid_argument("make_lich_data: A negative at node " +
                                        std::to_string(i));
    }
    if (std::abs(tau[grid->m] - geom.n) > 1e-8)
        throw std::invalid_argument(
            "make_lich_data: tau must approach n at the outer boundary "
            "(|tau(T) - n| = " + std::to_string(std::abs(tau[grid->m] - geom.n)) +
            ")");
    LichData d;
    d.geom = geom;
    d.grid = std::move(grid);
    d.tau = std::move(tau);
    d.amplitude = std::move(amplitude);
    return d;
}

SemilinearProblem lich_semilinear(const LichData& data) {
    SemilinearProblem sp;
    sp.geom = data.geom;
    sp.grid = data.grid;
    Field scal = sample(data.grid, data.geom.scal);
    Field tau2 = data.tau;
    Field a2 = data.amplitude;
    for (int i = 0; i < tau2.size(); ++i) {
        tau2[i] = mean_curv_coeff(data.geom.n, data.tau[i]);
        a2[i] = -data.amplitude[i] * data.amplitude[i];
    }
    sp.terms.push_back({std::move(scal), 1.0});
    sp.terms.push_back({std::move(tau2), data.geom.crit_exp - 1.0});
    sp.terms.push_back({std::move(a2), -data.geom.crit_exp - 1.0});
    return sp;
}

Field lich_residual(const LichData& data, const Field& phi) {
    return semilinear_residual(lich_semilinear(data), phi);
}

ProblemPSC reduce_to_psc(const LichData& data) {
    Field s_hat = data.tau;
    for (int i = 0; i < s_hat.size(); ++i)
        s_hat[i] = -mean_curv_coeff(data.geom.n, data.tau[i]);
    return make_problem(data.geom, data.grid, std::move(s_hat),
                        0.5 * data.geom.n);
}

Field linear_supersolution(const LichData& data, const Field& phi_tilde) {
    const Grid& grid = *data.grid;
    if (phi_tilde.size() != grid.num_nodes())
        throw std::invalid_argument("linear_supersolution: size mismatch");
    for (int i = 0; i < phi_tilde.size(); ++i)
        if (!(phi_tilde[i] > 0.0))
            throw std::domain_error(
                "linear_supersolution: phi_tilde must be positive");
    const Geometry& geom = data.geom;
    const double N = geom.crit_exp;

    std::vector<double> c(static_cast<size_t>(grid.m));
    std::vector<double> rhs(static_cast<size_t>(grid.m));
    for (int i = 0; i < grid.m; ++i) {
        c[i] = geom.scal(grid.t[i]) +
               (N - 1.0) * mean_curv_coeff(geom.n, data.tau[i]) *
                   std::pow(phi_tilde[i], N - 2.0);
        rhs[i] = data.amplitude[i] * data.amplitude[i] *
                 std::pow(phi_tilde[i], -N - 1.0);
    }
    // u(T) = 0, so the eliminated boundary coupling adds nothing.
    TriDiag A = assemble_rows(grid, geom, c, 0, grid.m - 1);
    TriDiagLU lu(A);
    std::vector<double> x = lu.solve(rhs);

    Field u = make_field(data.grid, 0.0);
    double umax = 0.0;
    for (int i = 0; i < grid.m; ++i) {
        u[i] = x[i];
        umax = std::fmax(umax, std::abs(x[i]));
    }
    const double tol = std::fmax(1e-12, 1e-10 * umax);
    for (int i = 0; i < grid.m; ++i)
        if (u[i] < -tol)
            throw MaxPrincipleViolation(
                "linear_supersolution: u = " + std::to_string(u[i]) +
                " at node " + std::to_string(i) +
                " violates the maximum principle (discretization fault)");
    return u;
}

SolveReport lich_solve(const LichData& data, const SolverOptions& opt) {
    const Grid& grid = *data.grid;
    ProblemPSC reduced = reduce_to_psc(data);
    Region Z = zero_region(reduced);
    SolveReport rep;
    rep.method = "lichnerowicz";

    if (!Z.empty()) {
        SignAgreement sa = sign_agreement(reduced, Z);
        if (sa.sign_lambda < 0) {
            rep.verdict = Verdict::NoSolution;
            rep.lambda_Z = sa.lambda;
            rep.region_Z = Z;
            EigenResult eig = lambda_min(reduced, Z);
            NoSolutionWitness w;
            w.region = Z;
            w.lambda = sa.lambda;
            w.u_neg = eig.ground_state;
            w.s_values = {1.0, 10.0, 100.0};
            w.f_values = coercivity_witness(reduced, w.u_neg, w.s_values);
            rep.witness = std::move(w);
            rep.solution = make_field(data.grid, 1.0);
            rep.min_phi = rep.max_phi = 1.0;
            rep.residual_inf = HUGE_VAL;
            return rep;
        }
        if (sa.sign_lambda == 0) {
            rep.verdict = Verdict::NotConverged;
            rep.lambda_Z = sa.lambda;
            rep.region_Z = Z;
            rep.solution = make_field(data.grid, 1.0);
            rep.residual_inf = HUGE_VAL;
            return rep;
        }
    }

    // item (ii): the A == 0 problem
    SolveReport tilde_rep = solve_theorem_a(reduced, opt);
    if (tilde_rep.verdict != Verdict::Solved) {
        tilde_rep.method = "lichnerowicz";
        return tilde_rep;
    }
    const Field& phi_tilde = tilde_rep.solution;

    bool a_zero = true;
    for (int i = 0; i <= grid.m; ++i)
        if (data.amplitude[i] != 0.0) a_zero = false;
    if (a_zero) {
        rep = tilde_rep;
        rep.method = "lichnerowicz";
        if (!Z.empty()) {
            rep.lambda_Z = lambda_min(reduced, Z).lambda;
            rep.region_Z = Z;
        }
        return rep;
    }

    // item (ii) -> (i): supersolution phi_tilde (1 + u), subsolution phi_tilde
    Field u = linear_supersolution(data, phi_tilde);
    Field sup = phi_tilde;
    for (int i = 0; i <= grid.m; ++i) sup[i] = phi_tilde[i] * (1.0 + u[i]);

    SemilinearProblem sp = lich_semilinear(data);
    // Discrete products of discrete solutions obey the supersolution
    // inequality only up to truncation error when phi_tilde is non-constant.
    double coeff_scale = 0.0;
    for (const SemilinearTerm& t : sp.terms)
        coeff_scale = std::fmax(coeff_scale, max_abs(t.coeff));
    const double sup_defect_tol =
        std::fmax(1e-9 * (1.0 + coeff_scale),
                  50.0 * grid.h * grid.h * (1.0 + coeff_scale));

    rep = monotone_solve(sp, phi_tilde, sup, opt, sup_defect_tol);
    rep.method = "lichnerowicz";
    if (!Z.empty()) {
        rep.lambda_Z = lambda_min(reduced, Z).lambda;
        rep.region_Z = Z;
    }
    if (rep.verdict == Verdict::Solved)
        rep.uniqueness_spread = lich_uniqueness_spread(data, rep.solution, opt);
    return rep;
}

double lich_uniqueness_spread(const LichData& data, const Field& reference,
                              const SolverOptions& opt) {
    const Grid& grid = *data.grid;
    SemilinearProblem sp = lich_semilinear(data);
    std::vector<Field> starts;
    starts.push_back(make_field(data.grid, 0.5));
    starts.push_back(make_field(data.grid, 1.0));
    starts.push_back(make_field(data.grid, 2.0));
    Field scaled = reference;
    for (int i = 0; i <= grid.m; ++i) scaled[i] = 0.75 * reference[i] + 0.5;
    starts.push_back(scaled);

    double spread = 0.0;
    for (const Field& s : starts) {
        SolveReport r;
        try {
            r = newton_solve(sp, s, opt);
        } catch (const SolverError&) {
            continue;
        }
        if (r.verdict != Verdict::Solved) continue;
        double d = 0.0;
        for (int i = 0; i <= grid.m; ++i)
            d = std::fmax(d, std::abs(r.solution[i] - reference[i]));
        spread = std::fmax(spread, d);
    }
    return spread;
}

} // namespace cclab
