#include "rotstar/scf.hpp"
#include "rotstar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rotstar::scf {

namespace {

// mass produced by a trial constant: g(alpha) = sum w [eff + alpha]_+^q
double bracket_mass(const GridField& eff, double alpha, double q) {
    const AxisymGrid& g = eff.grid;
    double acc = 0.0;
    for (int i = 0; i < g.nodes_r(); ++i)
        for (int k = 0; k < g.nodes_z(); ++k) {
            const double b = eff.at(i, k) + alpha;
            if (b > 0.0)
                acc += g.cell_volume(i, k) * std::pow(b, q);
        }
    return acc;
}

void warn_gamma(double gamma) {
    if (gamma <= 6.0 / 5.0 || gamma >= 2.0)
        std::fprintf(stderr,
                     "scf: warning: gamma = %g outside (6/5, 2); existence is not covered\n",
                     gamma);
    else if (gamma == 4.0 / 3.0)
        std::fprintf(stderr, "scf: warning: gamma = 4/3 has mass-degenerate radial scaling\n");
}

} // namespace

double solve_alpha(const GridField& effective, double gamma, double M, double alpha_max,
                   double mass_tol) {
    if (!(gamma > 1.0))
        throw InvalidParams("solve_alpha: gamma must exceed 1");
    if (M < 0.0)
        throw InvalidParams("solve_alpha: target mass must be nonnegative");
    const double q = 1.0 / (gamma - 1.0);
    const double max_eff = *std::max_element(effective.values.begin(), effective.values.end());
    if (M == 0.0)
        return -max_eff;
    if (!(mass_tol > 0.0))
        mass_tol = 1e-12 * M;
    if (bracket_mass(effective, alpha_max, q) < M - mass_tol)
        throw BoundaryHit("solve_alpha: target mass unreachable inside the validity region");
    double lo = -max_eff;  // g(lo) = 0
    double hi = alpha_max;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = bracket_mass(effective, mid, q);
        if (std::fabs(gm - M) <= mass_tol)
            return mid;
        if (gm < M)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-17 * std::max(1.0, std::fabs(hi)))
            break;
    }
    const double alpha = 0.5 * (lo + hi);
    if (std::fabs(bracket_mass(effective, alpha, q) - M) > mass_tol)
        throw NonConvergence("solve_alpha: bisection stalled above the mass tolerance");
    return alpha;
}

StarState solve(const DensityField& init, double kappa, double gamma, double M,
                const RotationProfile& profile, const SCFOptions& opts,
                const gravity::PotentialSolver& solver) {
    const AxisymGrid& g = init.grid;
    if (!(g == solver.grid()))
        throw InvalidParams("scf: init grid does not match the solver table");
    if (!(opts.relax > 0.0) || opts.relax > 1.0 || !(opts.tol > 0.0) || opts.max_iter < 1)
        throw InvalidParams("scf: bad options");
    if (!(M > 0.0))
        throw InvalidParams("scf: target mass must be positive");
    warn_gamma(gamma);
    const double q = 1.0 / (gamma - 1.0);

    const double init_mass = gravity::integrate(init);
    if (!(init_mass > 0.0))
        throw InvalidInit("scf: init density must carry positive mass");
    for (int i = 0; i < g.nodes_r(); ++i)
        if (init.at(i, g.nz) > 0.0)
            throw InvalidInit("scf: init support must be interior to the grid");
    for (int k = 0; k < g.nodes_z(); ++k)
        if (init.at(g.nr, k) > 0.0)
            throw InvalidInit("scf: init support must be interior to the grid");

    DensityField rho = init;
    const double scale = M / init_mass;
    for (double& v : rho.values)
        v *= scale;

    // centrifugal term, constant along grid columns
    const double j_inf = profile.j_infinity();
    const double k2 = kappa * kappa;
    std::vector<double> k2j(g.nodes_r());
    for (int i = 0; i < g.nodes_r(); ++i)
        k2j[i] = k2 * profile.j_of(g.r(i));

    auto effective_of = [&](const PotentialField& U) {
        GridField eff = U;
        for (int i = 0; i < g.nodes_r(); ++i)
            for (int k = 0; k < g.nodes_z(); ++k)
                eff.at(i, k) += k2j[i];
        return eff;
    };

    // resolve the validity gap from the seed's own constant when not given
    double eps_boundary = opts.eps_boundary;
    if (!(eps_boundary > 0.0)) {
        const GridField eff0 = effective_of(solver.solve(rho));
        const double alpha0 = solve_alpha(eff0, gamma, M, -k2 * j_inf, opts.mass_tol);
        eps_boundary = 1e-4 * std::fabs(alpha0);
        if (!(eps_boundary > 0.0))
            throw BoundaryHit("scf: seed constant sits on the validity boundary");
    }
    const double alpha_max = -k2 * j_inf - eps_boundary;

    const double theta = opts.relax;
    double alpha = 0.0;
    int iters = 0;
    bool converged = false;
    for (int n = 0; n < opts.max_iter; ++n) {
        ++iters;
        const PotentialField U = solver.solve(rho);
        const GridField eff = effective_of(U);
        alpha = solve_alpha(eff, gamma, M, alpha_max, opts.mass_tol);

        double max_rho = 0.0, delta = 0.0;
        bool edge = false;
        for (int i = 0; i < g.nodes_r(); ++i)
            for (int k = 0; k < g.nodes_z(); ++k) {
                const double b = eff.at(i, k) + alpha;
                const double target = b > 0.0 ? std::pow(b, q) : 0.0;
                if (target > 0.0 && (i == g.nr || k == g.nz))
                    edge = true;
                const double old = rho.at(i, k);
                max_rho = std::max(max_rho, old);
                delta = std::max(delta, std::fabs(target - old));
                rho.at(i, k) = (1.0 - theta) * old + theta * target;
            }
        if (edge)
            throw SupportOverflow("scf: density reached the outermost grid ring");
        if (theta * delta <= opts.tol * max_rho) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NonConvergence("scf: iteration cap reached before the sup-norm tolerance");

    StarState st;
    st.rho = rho;
    st.U = solver.solve(rho);
    const GridField eff = effective_of(st.U);
    st.alpha = solve_alpha(eff, gamma, M, alpha_max, opts.mass_tol);
    st.kappa = kappa;
    st.gamma = gamma;
    st.M_target = M;
    st.iterations = iters;
    st.diagnostics = diagnostics(rho, opts.norm_s);
    double f1 = 0.0;
    for (int i = 0; i < g.nodes_r(); ++i)
        for (int k = 0; k < g.nodes_z(); ++k) {
            const double b = eff.at(i, k) + st.alpha;
            const double target = b > 0.0 ? std::pow(b, q) : 0.0;
            f1 = std::max(f1, std::fabs(rho.at(i, k) - target));
        }
    st.residuals.f1_sup = f1;
    st.residuals.f2_mass = std::fabs(gravity::integrate(rho) - M);
    return st;
}

StarState solve(const DensityField& init, double kappa, double gamma, double M,
                const RotationProfile& profile, const SCFOptions& opts) {
    gravity::PotentialSolver solver(init.grid);
    return solve(init, kappa, gamma, M, profile, opts, solver);
}

Residuals residual(const StarState& state, const RotationProfile& profile) {
    const AxisymGrid& g = state.rho.grid;
    const PotentialField U = gravity::potential(state.rho);
    const double q = 1.0 / (state.gamma - 1.0);
    const double k2 = state.kappa * state.kappa;
    Residuals res;
    for (int i = 0; i < g.nodes_r(); ++i) {
        const double j = k2 * profile.j_of(g.r(i));
        for (int k = 0; k < g.nodes_z(); ++k) {
            const double b = U.at(i, k) + j + state.alpha;
            const double target = b > 0.0 ? std::pow(b, q) : 0.0;
            res.f1_sup = std::max(res.f1_sup, std::fabs(state.rho.at(i, k) - target));
        }
    }
    res.f2_mass = std::fabs(gravity::integrate(state.rho) - state.M_target);
    return res;
}

Diagnostics diagnostics(const DensityField& rho, double norm_s) {
    const AxisymGrid& g = rho.grid;
    Diagnostics d;
    for (int i = 0; i < g.nodes_r(); ++i)
        for (int k = 0; k < g.nodes_z(); ++k) {
            const double v = rho.at(i, k);
            if (v > 0.0) {
                d.support_r = std::max(d.support_r, g.r(i));
                d.support_z = std::max(d.support_z, g.z(k));
            }
            d.max_rho = std::max(d.max_rho, v);
        }
    d.norm_s = gravity::weighted_norm(rho, norm_s);
    return d;
}

DensityField sample_density(const radial::RadialProfile& profile, const AxisymGrid& grid) {
    DensityField rho{GridField::zeros(grid)};
    for (int i = 0; i < grid.nodes_r(); ++i)
        for (int k = 0; k < grid.nodes_z(); ++k) {
            const double d = std::hypot(grid.r(i), grid.z(k));
            rho.at(i, k) = profile.density_at(d);
        }
    return rho;
}

} // namespace rotstar::scf
