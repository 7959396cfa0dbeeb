#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotstar/errors.hpp"
#include "rotstar/scf.hpp"

#include <cmath>

using namespace rotstar;
using namespace rotstar::scf;
using rotation::RotationProfile;

namespace {

// effective field equal to c on a block of nodes, strongly negative elsewhere
GridField block_field(const AxisymGrid& g, double c, int i_hi, int k_hi) {
    GridField f = GridField::zeros(g);
    for (int i = 0; i < g.nodes_r(); ++i)
        for (int k = 0; k < g.nodes_z(); ++k)
            f.at(i, k) = (i <= i_hi && k <= k_hi) ? c : -1e6;
    return f;
}

double block_volume(const AxisymGrid& g, int i_hi, int k_hi) {
    double v = 0.0;
    for (int i = 0; i <= i_hi; ++i)
        for (int k = 0; k <= k_hi; ++k)
            v += g.cell_volume(i, k);
    return v;
}

} // namespace

TEST_CASE("solve_alpha inverts a constant effective field in closed form") {
    auto g = AxisymGrid::make(16, 16, 2.0, 2.0);
    const double c = 0.3, gamma = 1.5;
    const auto eff = block_field(g, c, 10, 10);
    const double V = block_volume(g, 10, 10);
    const double M = 0.7;
    const double alpha = solve_alpha(eff, gamma, M, 1.0, 1e-14 * M);
    const double expected = std::pow(M / V, gamma - 1.0) - c;
    CHECK(alpha == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("solve_alpha conventions and errors") {
    auto g = AxisymGrid::make(16, 16, 2.0, 2.0);
    const auto eff = block_field(g, 0.3, 10, 10);
    // zero target mass: alpha empties the bracket
    CHECK(solve_alpha(eff, 1.5, 0.0, 1.0, 1e-12) == doctest::Approx(-0.3));
    // mass unreachable below alpha_max
    CHECK_THROWS_AS((void)solve_alpha(eff, 1.5, 1e9, -0.29, 1e-3), BoundaryHit);
    CHECK_THROWS_AS((void)solve_alpha(eff, 0.9, 1.0, 1.0, 1e-12), InvalidParams);
    CHECK_THROWS_AS((void)solve_alpha(eff, 1.5, -1.0, 1.0, 1e-12), InvalidParams);
}

TEST_CASE("solve_alpha bracket mass is monotone in alpha") {
    auto g = AxisymGrid::make(24, 24, 2.0, 2.0);
    GridField eff = GridField::zeros(g);
    for (int i = 0; i < g.nodes_r(); ++i)
        for (int k = 0; k < g.nodes_z(); ++k)
            eff.at(i, k) = 0.5 - 0.3 * (g.r(i) * g.r(i) + g.z(k) * g.z(k));
    auto mass_at = [&](double alpha) {
        double acc = 0.0;
        for (int i = 0; i < g.nodes_r(); ++i)
            for (int k = 0; k < g.nodes_z(); ++k) {
                const double b = eff.at(i, k) + alpha;
                if (b > 0.0)
                    acc += g.cell_volume(i, k) * b * b;  // q = 2
            }
        return acc;
    };
    double prev = mass_at(-0.6);
    for (double a = -0.55; a <= 0.3; a += 0.05) {
        const double m = mass_at(a);
        CHECK(m >= prev);
        prev = m;
    }
    // and the solver hits any reachable mass in that range
    const double target = 0.5 * mass_at(0.0);
    const double alpha = solve_alpha(eff, 1.5, target, 0.5, 1e-13 * target);
    CHECK(mass_at(alpha) == doctest::Approx(target).epsilon(1e-10));
}

TEST_CASE("solve_alpha on the Lane-Emden effective field recovers -M/R") {
    // gamma = 2, a = 1: the constant is -1
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(2.0, 1.0));
    auto grid = AxisymGrid::make(72, 72, 2.0, 2.0);
    const auto rho = sample_density(prof, grid);
    const auto U = gravity::potential(rho);
    const double alpha = solve_alpha(U, 2.0, prof.M, 0.0, 1e-12 * prof.M);
    CHECK(alpha == doctest::Approx(-1.0).epsilon(2e-2));
}

TEST_CASE("kappa=0 gamma=2 solve matches the radial oracle") {
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(2.0, 1.0));
    auto grid = AxisymGrid::make(64, 64, 2.0, 2.0);
    const auto init = sample_density(prof, grid);
    const auto rot = RotationProfile::power_decay(0.0, 2.0);
    SCFOptions opts;
    const auto st = solve(init, 0.0, 2.0, prof.M, rot, opts);
    CHECK(st.alpha == doctest::Approx(-1.0).epsilon(2e-2));
    double sup = 0.0, scale = 0.0;
    for (int i = 0; i < grid.nodes_r(); ++i)
        for (int k = 0; k < grid.nodes_z(); ++k) {
            const double ex = prof.density_at(std::hypot(grid.r(i), grid.z(k)));
            sup = std::max(sup, std::fabs(st.rho.at(i, k) - ex));
            scale = std::max(scale, ex);
        }
    CHECK(sup / scale < 1e-2);
    // contracts
    CHECK(st.residuals.f1_sup <= 10.0 * opts.tol * st.diagnostics.max_rho);
    CHECK(st.residuals.f2_mass <= 1e-8 * prof.M);
    // support sits within two cells of the radial radius
    CHECK(std::fabs(st.diagnostics.support_r - prof.R) <= 2.0 * grid.dr());
    CHECK(std::fabs(st.diagnostics.support_z - prof.R) <= 2.0 * grid.dz());
}

TEST_CASE("kappa=0 gamma=1.5 converges to the radial solution from a perturbed start") {
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(1.5, 1.0));
    auto grid = AxisymGrid::make(64, 64, 3.0, 3.0);
    auto init = sample_density(prof, grid);
    // lopsided perturbation, then rely on the fixed point being radial
    for (int i = 0; i < grid.nodes_r(); ++i)
        for (int k = 0; k < grid.nodes_z(); ++k)
            init.at(i, k) *= 1.0 + 0.3 * std::exp(-grid.z(k));
    const auto rot = RotationProfile::power_decay(0.0, 2.0);
    SCFOptions opts;
    opts.relax = 0.8;
    const auto st = solve(init, 0.0, 1.5, prof.M, rot, opts);
    double sup = 0.0, scale = 0.0;
    for (int i = 0; i < grid.nodes_r(); ++i)
        for (int k = 0; k < grid.nodes_z(); ++k) {
            const double ex = prof.density_at(std::hypot(grid.r(i), grid.z(k)));
            sup = std::max(sup, std::fabs(st.rho.at(i, k) - ex));
            scale = std::max(scale, ex);
        }
    CHECK(sup / scale < 1e-2);
    CHECK(st.residuals.f2_mass <= 1e-8 * prof.M);
}

TEST_CASE("zero init is rejected") {
    auto grid = AxisymGrid::make(16, 16, 2.0, 2.0);
    DensityField init{GridField::zeros(grid)};
    const auto rot = RotationProfile::power_decay(0.0, 2.0);
    CHECK_THROWS_AS((void)solve(init, 0.0, 1.5, 1.0, rot), InvalidInit);
}

TEST_CASE("init support touching the grid edge is rejected") {
    auto grid = AxisymGrid::make(16, 16, 2.0, 2.0);
    DensityField init{GridField::zeros(grid)};
    for (int i = 0; i < grid.nodes_r(); ++i)
        for (int k = 0; k < grid.nodes_z(); ++k)
            init.at(i, k) = 1.0;  // fills the outermost ring too
    const auto rot = RotationProfile::power_decay(0.0, 2.0);
    CHECK_THROWS_AS((void)solve(init, 0.0, 1.5, 1.0, rot), InvalidInit);
}

TEST_CASE("rotating state is oblate and stays inside the validity region") {
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(1.5, 1.0));
    auto grid = AxisymGrid::make(64, 64, 3.0 * prof.R, 3.0 * prof.R);
    const auto init = sample_density(prof, grid);
    const auto rot = RotationProfile::power_decay(1.0, 2.0);
    SCFOptions opts;
    opts.relax = 0.8;
    gravity::PotentialSolver solver(grid);
    const auto st0 = solve(init, 0.0, 1.5, prof.M, rot, opts, solver);
    const auto st = solve(st0.rho, 0.45, 1.5, prof.M, rot, opts, solver);
    CHECK(st.diagnostics.support_r >= st.diagnostics.support_z);
    CHECK(st.kappa * st.kappa * rot.j_infinity() + st.alpha < 0.0);
    // residual recomputation path agrees with the recorded residuals
    const auto res = residual(st, rot);
    CHECK(res.f1_sup == doctest::Approx(st.residuals.f1_sup).epsilon(1e-10));
    CHECK(res.f2_mass == doctest::Approx(st.residuals.f2_mass).epsilon(1e-10));
    // the bracket mass at the converged effective field grows with alpha
    auto bracket_mass = [&](double alpha) {
        double acc = 0.0;
        for (int i = 0; i < grid.nodes_r(); ++i) {
            const double j = st.kappa * st.kappa * rot.j_of(grid.r(i));
            for (int k = 0; k < grid.nodes_z(); ++k) {
                const double b = st.U.at(i, k) + j + alpha;
                if (b > 0.0)
                    acc += grid.cell_volume(i, k) * b * b;
            }
        }
        return acc;
    };
    double prev = bracket_mass(st.alpha);
    CHECK(prev == doctest::Approx(prof.M).epsilon(1e-9));
    for (double d : {1e-4, 3e-4, 1e-3}) {
        const double m = bracket_mass(st.alpha + d);
        CHECK(m > prev);
        prev = m;
    }
}

TEST_CASE("support overflow is detected when the star outgrows the grid") {
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(1.5, 1.0));
    // grid barely containing the seed
    auto grid = AxisymGrid::make(32, 32, 1.15 * prof.R, 1.15 * prof.R);
    const auto init = sample_density(prof, grid);
    const auto rot = RotationProfile::power_decay(1.0, 2.0);
    SCFOptions opts;
    opts.relax = 0.8;
    CHECK_THROWS_AS((void)solve(init, 0.6, 1.5, prof.M, rot, opts), SupportOverflow);
}

TEST_CASE("diagnostics of trivial fields") {
    auto grid = AxisymGrid::make(16, 16, 2.0, 2.0);
    DensityField zero{GridField::zeros(grid)};
    const auto d = diagnostics(zero, 4.0);
    CHECK(d.support_r == 0.0);
    CHECK(d.support_z == 0.0);
    CHECK(d.max_rho == 0.0);
    CHECK(d.norm_s == 0.0);
}

TEST_CASE("lane-emden density sampling preserves mass approximately") {
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(1.5, 1.0));
    auto grid = AxisymGrid::make(96, 96, 2.0, 2.0);
    const auto rho = sample_density(prof, grid);
    CHECK(gravity::integrate(rho) == doctest::Approx(prof.M).epsilon(2e-3));
}

TEST_CASE("weighted norm of the sampled density is stable under refinement") {
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(1.5, 1.0));
    double norms[2];
    int idx = 0;
    for (int n : {64, 96}) {
        auto grid = AxisymGrid::make(n, n, 2.0, 2.0);
        norms[idx++] = gravity::weighted_norm(sample_density(prof, grid), 4.0);
    }
    CHECK(norms[0] > 0.0);
    CHECK(std::fabs(norms[0] - norms[1]) / norms[1] < 0.01);
}

TEST_CASE("residual of the non-iterated interpolant shrinks under refinement") {
    // gamma = 2 seed with its exact constant; f1 is pure discretization error
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(2.0, 1.0));
    const auto rot = RotationProfile::power_decay(0.0, 2.0);
    double f1[2];
    int idx = 0;
    for (int n : {48, 96}) {
        auto grid = AxisymGrid::make(n, n, 2.0, 2.0);
        StarState st;
        st.rho = sample_density(prof, grid);
        st.alpha = -1.0;
        st.kappa = 0.0;
        st.gamma = 2.0;
        st.M_target = prof.M;
        f1[idx++] = residual(st, rot).f1_sup;
    }
    CHECK(f1[1] < f1[0]);
    CHECK(f1[0] < 0.05);  // already small at 48^2
}
