#pragma once

#include "rotstar/gravity.hpp"
#include "rotstar/radial.hpp"
#include "rotstar/rotation.hpp"

namespace rotstar::scf {

using gravity::AxisymGrid;
using gravity::DensityField;
using gravity::GridField;
using gravity::PotentialField;
using rotation::RotationProfile;

struct Diagnostics {
    double support_r = 0.0;  // largest node radius with positive density
    double support_z = 0.0;
    double max_rho = 0.0;
    double norm_s = 0.0;     // weighted sup norm of the density
};

struct Residuals {
    double f1_sup = 0.0;   // sup | rho - [U + kappa^2 j + alpha]_+^{1/(g-1)} |
    double f2_mass = 0.0;  // | integral rho - M |
};

/// A converged solution of the mass-constrained fixed-point problem.
struct StarState {
    DensityField rho;
    PotentialField U;
    double alpha = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    double M_target = 0.0;
    Diagnostics diagnostics;
    Residuals residuals;
    int iterations = 0;
};

struct SCFOptions {
    double relax = 0.5;        // Picard under-relaxation weight in (0, 1]
    double tol = 1e-7;         // sup-norm convergence: |drho| <= tol * max rho
    int max_iter = 300;
    double mass_tol = -1.0;    // alpha-solve tolerance; <= 0 means 1e-12 * M
    double eps_boundary = -1.0;  // validity gap; <= 0 means 1e-4 * |alpha_0|
    double norm_s = 4.0;       // exponent of the reported weighted norm
};

/// Smallest constant alpha <= alpha_max with
///   | sum_cells w_cell [effective + alpha]_+^{1/(gamma-1)} - M | <= mass_tol.
/// The cell mass g(alpha) is nondecreasing in alpha, so bisection from the
/// bracket [-max(effective), alpha_max] always converges. Throws BoundaryHit
/// when even alpha_max cannot reach the target mass. M = 0 returns
/// -max(effective) by convention.
double solve_alpha(const GridField& effective, double gamma, double M, double alpha_max,
                   double mass_tol);

/// Under-relaxed self-consistent field iteration on
///   rho = [ U(rho) + kappa^2 j(r) + alpha ]_+^{1/(gamma-1)},
/// with alpha re-solved every step so the total mass stays at M along the
/// whole iteration. The init density is rescaled to mass M before iterating.
/// Throws InvalidInit (zero-mass init), NonConvergence, BoundaryHit,
/// SupportOverflow (density reached the outermost grid ring).
StarState solve(const DensityField& init, double kappa, double gamma, double M,
                const RotationProfile& profile, const SCFOptions& opts,
                const gravity::PotentialSolver& solver);

/// Convenience overload that builds the kernel table itself.
StarState solve(const DensityField& init, double kappa, double gamma, double M,
                const RotationProfile& profile, const SCFOptions& opts = {});

/// Fixed-point and mass residuals of a state, with U recomputed from rho.
Residuals residual(const StarState& state, const RotationProfile& profile);

/// Node-resolution support extents, density peak and weighted norm.
Diagnostics diagnostics(const DensityField& rho, double norm_s);

/// Sample the density of a radial solution onto a grid (the kappa = 0 seed).
DensityField sample_density(const radial::RadialProfile& profile, const AxisymGrid& grid);

} // namespace rotstar::scf
