#include "rotstar/continuation.hpp"
#include "rotstar/errors.hpp"

#include <cmath>
#include <cstdio>

namespace rotstar::continuation {

namespace {

FamilyRecord record_of(const StarState& st) {
    return {st.kappa,
            st.alpha,
            st.diagnostics.max_rho,
            st.diagnostics.support_r,
            st.diagnostics.support_z,
            st.diagnostics.norm_s,
            st.residuals.f1_sup,
            st.residuals.f2_mass,
            st.iterations};
}

} // namespace

const char* to_string(TerminationKind kind) {
    switch (kind) {
    case TerminationKind::SupportBlowup: return "SupportBlowup";
    case TerminationKind::DensityBlowup: return "DensityBlowup";
    case TerminationKind::BoundaryProximity: return "BoundaryProximity";
    case TerminationKind::MaxKappaReached: return "MaxKappaReached";
    case TerminationKind::ConvergenceFailure: return "ConvergenceFailure";
    }
    return "?";
}

FamilyResult continue_family(const StarState& seed, const scf::RotationProfile& profile,
                             double kappa_max, double step0, double step_min,
                             const SCFOptions& opts, const Limits& limits,
                             const StateObserver& observer) {
    if (seed.kappa != 0.0)
        throw InvalidParams("continue_family: seed must sit at kappa = 0");
    if (!(step0 > step_min) || !(step_min > 0.0))
        throw InvalidParams("continue_family: need step0 > step_min > 0");
    if (!(limits.support_frac > 0.0) || !(limits.support_frac < 1.0) ||
        !(limits.rho_factor > 1.0))
        throw InvalidParams("continue_family: bad limits");

    const double rmax = seed.rho.grid.rmax;
    const double seed_central = seed.diagnostics.max_rho;
    const double j_inf = profile.j_infinity();

    // every solve inherits the seed's validity gap so the family shares one
    // alpha_max curve
    SCFOptions run_opts = opts;
    if (!(run_opts.eps_boundary > 0.0))
        run_opts.eps_boundary = 1e-4 * std::fabs(seed.alpha);

    gravity::PotentialSolver solver(seed.rho.grid);

    FamilyResult out;
    out.records.push_back(record_of(seed));
    if (observer)
        observer(0, seed);

    // classify a converged state; true means the family ends here
    auto classify = [&](const StarState& st, Termination& term) {
        if (st.diagnostics.support_r > limits.support_frac * rmax) {
            term = {TerminationKind::SupportBlowup,
                    "support_r exceeded " + std::to_string(limits.support_frac) + " * rmax"};
            return true;
        }
        if (st.diagnostics.max_rho > limits.rho_factor * seed_central) {
            term = {TerminationKind::DensityBlowup,
                    "max_rho exceeded " + std::to_string(limits.rho_factor) +
                        " * seed central density"};
            return true;
        }
        // alpha is capped at -kappa^2 j_inf - eps_boundary; landing on the cap
        // (within bisection fuzz) means the mass constraint pinned alpha there
        const double margin = st.kappa * st.kappa * j_inf + st.alpha;
        if (margin > -(1.0 - 1e-6) * run_opts.eps_boundary) {
            term = {TerminationKind::BoundaryProximity,
                    "kappa^2 j_inf + alpha reached the validity gap"};
            return true;
        }
        return false;
    };

    double kappa = 0.0;
    double step = step0;
    StarState prev = seed;
    while (true) {
        const double kappa_next = kappa + step;
        if (kappa_next > kappa_max * (1.0 + 1e-12)) {
            out.termination = {TerminationKind::MaxKappaReached,
                               "next step would pass kappa_max"};
            return out;
        }
        StarState st;
        try {
            st = scf::solve(prev.rho, kappa_next, prev.gamma, prev.M_target, profile,
                            run_opts, solver);
        } catch (const NonConvergence&) {
            step *= 0.5;
            if (step < step_min) {
                out.termination = {TerminationKind::ConvergenceFailure,
                                   "step underflow at kappa = " + std::to_string(kappa_next)};
                return out;
            }
            continue;
        } catch (const SupportOverflow&) {
            // direct evidence of the support leaving the grid
            out.termination = {TerminationKind::SupportBlowup,
                               "support reached the grid edge during iteration at kappa = " +
                                   std::to_string(kappa_next)};
            return out;
        } catch (const BoundaryHit&) {
            out.termination = {TerminationKind::BoundaryProximity,
                               "target mass unreachable inside the validity region at kappa = " +
                                   std::to_string(kappa_next)};
            return out;
        }
        out.records.push_back(record_of(st));
        if (observer)
            observer(out.records.size() - 1, st);
        kappa = kappa_next;
        prev = std::move(st);

        Termination term;
        if (classify(prev, term)) {
            out.termination = term;
            return out;
        }
        if (kappa >= kappa_max * (1.0 - 1e-12)) {
            out.termination = {TerminationKind::MaxKappaReached, "kappa reached kappa_max"};
            return out;
        }
    }
}

double mass_slope_check(double gamma, double a0) {
    if (!(gamma > 6.0 / 5.0) || !(gamma <= 2.0))
        throw InvalidParams("mass_slope_check: gamma must lie in (6/5, 2]");
    if (!(a0 > 0.0))
        throw InvalidParams("mass_slope_check: a0 must be positive");
    const double h = 0.01 * a0;
    const auto lo = radial::solve_lane_emden(radial::PolytropeParams::make(gamma, a0 - h));
    const auto hi = radial::solve_lane_emden(radial::PolytropeParams::make(gamma, a0 + h));
    return (radial::mass_of(hi) - radial::mass_of(lo)) / (2.0 * h);
}

bool mass_slope_degenerate(double gamma, double a0) {
    const double slope = mass_slope_check(gamma, a0);
    const auto mid = radial::solve_lane_emden(radial::PolytropeParams::make(gamma, a0));
    const bool degenerate = std::fabs(slope) < 1e-6 * radial::mass_of(mid) / a0;
    if (degenerate)
        std::fprintf(stderr,
                     "continuation: warning: |dM/da| ~ %g at a0 = %g; the local solution "
                     "curve is not grounded, refusing to continue\n",
                     slope, a0);
    return degenerate;
}

} // namespace rotstar::continuation
