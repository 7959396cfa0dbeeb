#pragma once

#include "rotstar/scf.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rotstar::continuation {

using scf::SCFOptions;
using scf::StarState;

/// Scalars recorded for one converged member of the family.
struct FamilyRecord {
    double kappa = 0.0;
    double alpha = 0.0;
    double max_rho = 0.0;
    double support_r = 0.0;
    double support_z = 0.0;
    double norm_s = 0.0;
    double f1_sup = 0.0;
    double f2_mass = 0.0;
    int scf_iters = 0;
};

enum class TerminationKind {
    SupportBlowup,      // support reached the configured fraction of the grid
    DensityBlowup,      // peak density exceeded rho_factor times the seed's
    BoundaryProximity,  // kappa^2 j_inf + alpha closed on the validity gap
    MaxKappaReached,
    ConvergenceFailure,  // step-halving underflowed without a converged state
};

const char* to_string(TerminationKind kind);

struct Termination {
    TerminationKind kind;
    std::string detail;
};

struct Limits {
    double support_frac = 0.95;  // fraction of rmax that counts as blow-up
    double rho_factor = 50.0;    // central-density growth that counts as blow-up
};

struct FamilyResult {
    std::vector<FamilyRecord> records;
    Termination termination;
};

/// Called after every recorded state; index 0 is the seed. Used for snapshot
/// dumps and for capturing states in tests.
using StateObserver = std::function<void(std::size_t index, const StarState&)>;

/// March the family kappa -> kappa + step from a converged seed at kappa = 0,
/// warm-starting each solve from the previous density. A failed solve halves
/// the step until step_min; classification precedence after each converged
/// state is SupportBlowup, DensityBlowup, BoundaryProximity, MaxKappaReached.
FamilyResult continue_family(const StarState& seed, const scf::RotationProfile& profile,
                             double kappa_max, double step0, double step_min,
                             const SCFOptions& opts, const Limits& limits,
                             const StateObserver& observer = {});

/// Centered finite-difference mass slope dM/da of the radial family at a0.
/// The continuation driver refuses to start when |slope| falls below
/// 1e-6 * M(a0)/a0 (the local curve has no leading-order mass response).
double mass_slope_check(double gamma, double a0);

/// The gate continue_family applies to the slope.
bool mass_slope_degenerate(double gamma, double a0);

} // namespace rotstar::continuation
