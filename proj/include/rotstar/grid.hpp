#pragma once

#include "rotstar/errors.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace rotstar::gravity {

/// Uniform cylindrical half-grid: nodes r_i = i dr (i = 0..nr),
/// z_k = k dz (k = 0..nz). Fields live on the z >= 0 half; every field is
/// implicitly even in z.
struct AxisymGrid {
    int nr = 0, nz = 0;     // cell counts
    double rmax = 0.0, zmax = 0.0;

    static AxisymGrid make(int nr, int nz, double rmax, double zmax) {
        if (nr < 2 || nz < 2 || !(rmax > 0.0) || !(zmax > 0.0))
            throw InvalidParams("grid: need nr, nz >= 2 and positive extents");
        return {nr, nz, rmax, zmax};
    }

    double dr() const { return rmax / nr; }
    double dz() const { return zmax / nz; }
    int nodes_r() const { return nr + 1; }
    int nodes_z() const { return nz + 1; }
    std::size_t node_count() const {
        return static_cast<std::size_t>(nodes_r()) * nodes_z();
    }
    double r(int i) const { return i * dr(); }
    double z(int k) const { return k * dz(); }
    std::size_t index(int i, int k) const {
        return static_cast<std::size_t>(k) * nodes_r() + i;
    }

    /// Exact first r-moment of the node's owned radial interval.
    double r_weight(int i) const {
        const double h = dr();
        if (i == 0)
            return h * h / 8.0;
        if (i == nr)
            return rmax * h / 2.0 - h * h / 8.0;
        return r(i) * h;
    }
    /// Half-space z measure of the node (the mirror half is added by the
    /// kernel fold or by the factor 2 in volumes).
    double z_weight(int k) const {
        const double h = dz();
        return (k == 0 || k == nz) ? 0.5 * h : h;
    }
    /// Full-space volume of the node cell, mirror included.
    double cell_volume(int i, int k) const {
        return 4.0 * M_PI * r_weight(i) * z_weight(k);
    }

    bool operator==(const AxisymGrid&) const = default;
};

struct GridField {
    AxisymGrid grid;
    std::vector<double> values;

    static GridField zeros(const AxisymGrid& g) { return {g, std::vector<double>(g.node_count(), 0.0)}; }

    double& at(int i, int k) { return values[grid.index(i, k)]; }
    double at(int i, int k) const { return values[grid.index(i, k)]; }
};

struct DensityField : GridField {};
struct PotentialField : GridField {};

/// Full-space integral of a z-even node field (e.g. total mass of a density).
double integrate(const GridField& f);

/// Weighted sup norm: max over nodes of (1 + r^2 + z^2)^{s/2} |f|.
double weighted_norm(const GridField& f, double s);

} // namespace rotstar::gravity
