// rotstar: equilibrium configurations of rotating self-gravitating fluids.
//
// Subcommands
//   lane-emden   radial solution, prints R and M, writes profile.csv
//   maclaurin    spheroid sequence CSV over an ellipticity range
//   solve        one fixed-point solve at a given kappa, writes state dump+CSV
//   continue     family continuation in kappa with termination classification
//
// Exit codes: 0 success, 2 config error, 3 no finite radius,
//             4 non-convergence, 5 boundary hit.

#include "CLI11.hpp"

#include "rotstar/config.hpp"
#include "rotstar/continuation.hpp"
#include "rotstar/errors.hpp"
#include "rotstar/io.hpp"
#include "rotstar/maclaurin.hpp"
#include "rotstar/radial.hpp"
#include "rotstar/rotation.hpp"
#include "rotstar/scf.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>

namespace {

using namespace rotstar;
using config::RunConfig;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_no_radius = 3;
constexpr int exit_nonconvergence = 4;
constexpr int exit_boundary = 5;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
};

RunConfig load(const CommonArgs& args) {
    auto cfg = RunConfig::parse_file(args.config_path);
    std::filesystem::create_directories(args.out_dir);
    return cfg;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    return (std::filesystem::path(args.out_dir) / name).string();
}

radial::PolytropeParams radial_params(const RunConfig& cfg) {
    cfg.require("gamma");
    cfg.require("central_value");
    return radial::PolytropeParams::make(cfg.get_double("gamma"),
                                         cfg.get_double("central_value"));
}

radial::RadialProfile solve_radial(const RunConfig& cfg, const radial::PolytropeParams& p) {
    return radial::solve_lane_emden(p, cfg.get_double("radial.step", 1e-3),
                                    cfg.get_double("radial.tol", 1e-10),
                                    cfg.get_double("radial.xi_max", 100.0));
}

rotation::RotationProfile rotation_profile(const RunConfig& cfg) {
    const std::string kind = cfg.get_string("rotation.kind", "power_decay");
    if (kind == "power_decay")
        return rotation::RotationProfile::power_decay(cfg.get_double("rotation.omega_bar", 0.0),
                                                      cfg.get_double("rotation.p", 2.0));
    if (kind == "gaussian")
        return rotation::RotationProfile::gaussian(cfg.get_double("rotation.omega_bar", 0.0));
    if (kind == "tabulated") {
        cfg.require("rotation.table_path");
        return rotation::RotationProfile::tabulated(
            io::read_rotation_table(cfg.get_string("rotation.table_path")));
    }
    throw ConfigError("config: rotation.kind must be power_decay, gaussian or tabulated");
}

scf::AxisymGrid grid_of(const RunConfig& cfg) {
    cfg.require("grid.nr");
    cfg.require("grid.nz");
    cfg.require("grid.rmax");
    cfg.require("grid.zmax");
    return scf::AxisymGrid::make(cfg.get_int("grid.nr"), cfg.get_int("grid.nz"),
                                 cfg.get_double("grid.rmax"), cfg.get_double("grid.zmax"));
}

scf::SCFOptions scf_options(const RunConfig& cfg) {
    scf::SCFOptions opts;
    opts.relax = cfg.get_double("scf.relax", opts.relax);
    opts.tol = cfg.get_double("scf.tol", opts.tol);
    opts.max_iter = cfg.get_int("scf.max_iter", opts.max_iter);
    opts.mass_tol = cfg.get_double("scf.mass_tol", opts.mass_tol);
    opts.eps_boundary = cfg.get_double("scf.eps_boundary", opts.eps_boundary);
    opts.norm_s = cfg.get_double("norm.s", opts.norm_s);
    if (!(opts.relax > 0.0) || opts.relax > 1.0)
        throw ConfigError("config: scf.relax must lie in (0, 1]");
    if (!(opts.tol > 0.0) || opts.max_iter < 1)
        throw ConfigError("config: scf.tol must be positive, scf.max_iter >= 1");
    return opts;
}

// (a0, M) from whichever of central_value / mass the config provides; the
// radial mass power law inverts mass -> central value
std::pair<double, double> seed_pair(const RunConfig& cfg, double gamma) {
    if (cfg.has("central_value")) {
        const auto prof = radial::solve_lane_emden(
            radial::PolytropeParams::make(gamma, cfg.get_double("central_value")));
        return {prof.a, cfg.has("mass") ? cfg.get_double("mass") : prof.M};
    }
    if (!cfg.has("mass"))
        throw ConfigError("config: need central_value or mass");
    const double M = cfg.get_double("mass");
    if (!(M > 0.0))
        throw ConfigError("config: mass must be positive");
    const double mexp = radial::mass_exponent(gamma);  // rejects gamma = 4/3 range issues below
    if (mexp == 0.0)
        throw ConfigError("config: at gamma = 4/3 the mass law is flat; give central_value");
    const auto ref = radial::solve_lane_emden(radial::PolytropeParams::make(gamma, 1.0));
    return {std::pow(M / ref.M, 1.0 / mexp), M};
}

int cmd_lane_emden(const CommonArgs& args) {
    const auto cfg = load(args);
    const auto params = radial_params(cfg);
    const auto prof = solve_radial(cfg, params);
    std::printf("R = %s\n", io::format_double(prof.R).c_str());
    std::printf("M = %s\n", io::format_double(radial::mass_of(prof)).c_str());
    std::vector<double> rho(prof.xi.size());
    for (std::size_t i = 0; i < prof.xi.size(); ++i)
        rho[i] = prof.u[i] > 0.0 ? std::pow(prof.u[i], prof.q) : 0.0;
    io::write_profile_csv(out_path(args, "profile.csv"), prof.xi, prof.u, rho);
    return exit_ok;
}

int cmd_maclaurin(const CommonArgs& args) {
    const auto cfg = load(args);
    cfg.require("maclaurin.e_min");
    cfg.require("maclaurin.e_max");
    const double e_min = cfg.get_double("maclaurin.e_min");
    const double e_max = cfg.get_double("maclaurin.e_max");
    const int n = cfg.get_int("maclaurin.n", 100);
    const int npts = cfg.get_int("maclaurin.npts", 50);
    const double tol = cfg.get_double("maclaurin.tol", 1e-10);
    if (!(e_min >= 1.0))
        throw ConfigError("config: maclaurin.e_min must be >= 1 (oblate)");
    if (!(e_max >= e_min) || n < 1)
        throw ConfigError("config: bad maclaurin range");
    const auto fam = maclaurin::family(e_min, e_max, static_cast<std::size_t>(n), tol);
    std::ofstream out(out_path(args, "maclaurin.csv"));
    if (!out)
        throw Error("cannot open output CSV");
    out << "e,a,c,omega2,boundary_residual\n";
    for (const auto& m : fam.members)
        out << io::format_double(m.e) << ',' << io::format_double(m.a) << ','
            << io::format_double(m.c) << ',' << io::format_double(m.omega2) << ','
            << io::format_double(maclaurin::boundary_residual(m.e, npts, tol)) << '\n';
    return exit_ok;
}

// shared by solve and continue
struct Problem {
    double gamma;
    double kappa;
    double mass;
    rotation::RotationProfile profile;
    scf::AxisymGrid grid;
    scf::SCFOptions opts;
    scf::DensityField init;
};

Problem build_problem(const RunConfig& cfg) {
    cfg.require("gamma");
    const double gamma = cfg.get_double("gamma");
    if (!(gamma > 1.0))
        throw ConfigError("config: gamma must exceed 1");
    auto profile = rotation_profile(cfg);
    auto grid = grid_of(cfg);
    auto opts = scf_options(cfg);
    const double kappa = cfg.get_double("kappa", 0.0);
    if (cfg.has("init.path")) {
        auto dump = io::read_grid_dump(cfg.get_string("init.path"));
        if (!(dump.rho.grid == grid))
            throw ConfigError("config: init.path grid does not match grid.*");
        cfg.require("mass");
        return {gamma, kappa, cfg.get_double("mass"), std::move(profile), grid,
                opts, std::move(dump.rho)};
    }
    const auto [a0, M] = seed_pair(cfg, gamma);
    const auto prof = radial::solve_lane_emden(radial::PolytropeParams::make(gamma, a0));
    auto init = scf::sample_density(prof, grid);
    return {gamma, kappa, M, std::move(profile), grid, opts, std::move(init)};
}

int cmd_solve(const CommonArgs& args) {
    const auto cfg = load(args);
    auto prob = build_problem(cfg);
    const auto st = scf::solve(prob.init, prob.kappa, prob.gamma, prob.mass, prob.profile,
                               prob.opts);
    io::write_grid_dump(out_path(args, "state.dat"), st.rho, st.U);
    const continuation::FamilyRecord rec{st.kappa,
                                         st.alpha,
                                         st.diagnostics.max_rho,
                                         st.diagnostics.support_r,
                                         st.diagnostics.support_z,
                                         st.diagnostics.norm_s,
                                         st.residuals.f1_sup,
                                         st.residuals.f2_mass,
                                         st.iterations};
    io::write_family_csv(out_path(args, "state.csv"), {rec}, nullptr);
    std::printf("kappa = %s\nalpha = %s\niterations = %d\n",
                io::format_double(st.kappa).c_str(), io::format_double(st.alpha).c_str(),
                st.iterations);
    return exit_ok;
}

int cmd_continue(const CommonArgs& args) {
    const auto cfg = load(args);
    auto prob = build_problem(cfg);
    cfg.require("continuation.kappa_max");
    const double kappa_max = cfg.get_double("continuation.kappa_max");
    const double step0 = cfg.get_double("continuation.step0", 0.02);
    const double step_min = cfg.get_double("continuation.step_min", 1e-4);
    continuation::Limits limits;
    limits.support_frac = cfg.get_double("continuation.support_frac", limits.support_frac);
    limits.rho_factor = cfg.get_double("continuation.rho_factor", limits.rho_factor);
    const int snapshot_every = cfg.get_int("continuation.snapshot_every", 0);

    const double a0 = cfg.has("central_value") ? cfg.get_double("central_value")
                                               : seed_pair(cfg, prob.gamma).first;
    if (continuation::mass_slope_degenerate(prob.gamma, a0))
        throw ConfigError("continuation: mass slope dM/da vanishes at the seed");

    const auto seed =
        scf::solve(prob.init, 0.0, prob.gamma, prob.mass, prob.profile, prob.opts);
    continuation::StateObserver observer;
    if (snapshot_every > 0)
        observer = [&](std::size_t index, const scf::StarState& st) {
            if (index == 0 || index % static_cast<std::size_t>(snapshot_every) != 0)
                return;
            char name[48];
            std::snprintf(name, sizeof name, "snapshot_%04zu.dat", index);
            io::write_grid_dump(out_path(args, name), st.rho, st.U);
        };
    const auto fam = continuation::continue_family(seed, prob.profile, kappa_max, step0,
                                                   step_min, prob.opts, limits, observer);
    io::write_family_csv(out_path(args, "family.csv"), fam.records, &fam.termination);
    std::printf("records = %zu\ntermination = %s\n", fam.records.size(),
                continuation::to_string(fam.termination.kind));
    return fam.termination.kind == continuation::TerminationKind::ConvergenceFailure
               ? exit_nonconvergence
               : exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibria of rotating self-gravitating fluids"};
    app.require_subcommand(1);
    app.fallthrough();
    CommonArgs args;
    app.add_option("--config", args.config_path, "configuration file")->required();
    app.add_option("--out", args.out_dir, "output directory");

    auto* lane = app.add_subcommand("lane-emden", "radial non-rotating solution");
    auto* mac = app.add_subcommand("maclaurin", "incompressible spheroid sequence");
    auto* slv = app.add_subcommand("solve", "single fixed-point solve");
    auto* cnt = app.add_subcommand("continue", "family continuation in kappa");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? exit_config : exit_config;
    }

    try {
        if (lane->parsed())
            return cmd_lane_emden(args);
        if (mac->parsed())
            return cmd_maclaurin(args);
        if (slv->parsed())
            return cmd_solve(args);
        if (cnt->parsed())
            return cmd_continue(args);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    } catch (const InvalidParams& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    } catch (const NoFiniteRadius& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_no_radius;
    } catch (const BoundaryHit& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_boundary;
    } catch (const NonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_nonconvergence;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_config;
}
