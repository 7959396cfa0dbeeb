#pragma once

// shared test-side utilities: cell-averaged fills of indicator densities and
// closed-form reference potentials

#include "rotstar/grid.hpp"

#include <cmath>
#include <functional>

namespace test_helpers {

using rotstar::gravity::AxisymGrid;
using rotstar::gravity::DensityField;
using rotstar::gravity::GridField;

/// Fill a density with the r-weighted cell average of `inside` times rho0,
/// subsampled SxS per cell. Represents sharp-boundary bodies at second order.
inline DensityField fill_average(const AxisymGrid& g,
                                 const std::function<bool(double, double)>& inside,
                                 double rho0 = 1.0, int S = 64) {
    DensityField rho{GridField::zeros(g)};
    const double dr = g.dr(), dz = g.dz();
    for (int i = 0; i < g.nodes_r(); ++i) {
        const double rlo = (i == 0) ? 0.0 : g.r(i) - 0.5 * dr;
        const double rhi = (i == 0) ? 0.5 * dr : (i == g.nr ? g.rmax : g.r(i) + 0.5 * dr);
        for (int k = 0; k < g.nodes_z(); ++k) {
            const double zlo = (k == 0) ? 0.0 : g.z(k) - 0.5 * dz;
            const double zhi = (k == 0) ? 0.5 * dz : (k == g.nz ? g.zmax : g.z(k) + 0.5 * dz);
            double num = 0.0, den = 0.0;
            for (int p = 0; p < S; ++p)
                for (int q = 0; q < S; ++q) {
                    const double r = rlo + (rhi - rlo) * (p + 0.5) / S;
                    const double z = zlo + (zhi - zlo) * (q + 0.5) / S;
                    den += r;
                    if (inside(r, z))
                        num += r;
                }
            rho.at(i, k) = den > 0.0 ? rho0 * num / den : 0.0;
        }
    }
    return rho;
}

inline DensityField fill_ball(const AxisymGrid& g, double R, double rho0 = 1.0, int S = 64) {
    return fill_average(
        g, [R](double r, double z) { return r * r + z * z <= R * R; }, rho0, S);
}

/// Interior/exterior potential of the homogeneous unit-density ball.
inline double ball_potential(double R, double r, double z) {
    const double d = std::sqrt(r * r + z * z);
    const double M = 4.0 * M_PI / 3.0 * R * R * R;
    if (d >= R)
        return M / d;
    return 2.0 * M_PI * R * R - (2.0 * M_PI / 3.0) * d * d;
}

} // namespace test_helpers
