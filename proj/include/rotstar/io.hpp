#pragma once

#include "rotstar/continuation.hpp"
#include "rotstar/grid.hpp"

#include <string>
#include <vector>

namespace rotstar::io {

/// 17 significant digits, locale-independent; the round-trip is bit exact.
std::string format_double(double v);

/// Grid dump: header `# nr nz dr dz`, one `r z rho U` row per node, z rows
/// outer and r inner.
void write_grid_dump(const std::string& path, const gravity::DensityField& rho,
                     const gravity::PotentialField& U);

struct GridDump {
    gravity::DensityField rho;
    gravity::PotentialField U;
};

GridDump read_grid_dump(const std::string& path);

/// Family CSV with the exact header
/// `kappa,alpha,max_rho,support_r,support_z,norm_s,f1_sup,f2_mass,scf_iters`
/// and a `# termination=<kind>` footer when a termination is given.
void write_family_csv(const std::string& path,
                      const std::vector<continuation::FamilyRecord>& records,
                      const continuation::Termination* termination);

/// Lane-Emden profile CSV: header `xi,u,rho`.
void write_profile_csv(const std::string& path, const std::vector<double>& xi,
                       const std::vector<double>& u, const std::vector<double>& rho);

/// Two-column rotation table (s, omega^2); `#` comments allowed.
std::vector<std::pair<double, double>> read_rotation_table(const std::string& path);

} // namespace rotstar::io
