#pragma once

#include "rotstar/grid.hpp"

#include <vector>

namespace rotstar::gravity {

/// Complete elliptic integral of the first kind,
/// K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta), 0 <= k < 1,
/// by the arithmetic-geometric mean iteration.
double elliptic_K(double k);

/// How to run the target loop of a potential evaluation.
enum class Exec { parallel, serial };

/// Newtonian potential of an axisymmetric z-even density by summation of the
/// azimuthally integrated ring kernel
///   G(r, r', dz) = 4 K(k) / sqrt((r+r')^2 + dz^2),
///   k^2 = 4 r r' / ((r+r')^2 + dz^2),
/// with the z < 0 mirror folded in. The kernel values for all node pairs are
/// tabulated once per grid; entries whose modulus exceeds the near-singular
/// threshold are replaced by 4x4 Gauss sub-cell integrals, symmetrized over
/// the (target, source) pair so the discrete operator stays self-adjoint.
class PotentialSolver {
public:
    explicit PotentialSolver(const AxisymGrid& grid);

    const AxisymGrid& grid() const { return grid_; }

    /// Potential at every node. Target nodes are independent; the parallel
    /// path distributes them over OpenMP threads (per-node sums stay serial,
    /// so results are identical to the serial path).
    PotentialField solve(const DensityField& rho, Exec exec = Exec::parallel) const;

    /// Kernel value used for target node i and source node j at |dz| = m dz.
    double table_entry(int i, int j, int m) const {
        return table_[(static_cast<std::size_t>(i) * nodes_r_ + j) * stride_ + m];
    }

private:
    AxisymGrid grid_;
    int nodes_r_, stride_;
    std::vector<double> table_;  // [target r][source r][|dz| index]
};

/// One-call convenience wrapper; builds the table and solves.
PotentialField potential(const DensityField& rho);

/// Straightforward table-free summation, kept as the reference the fast path
/// is tested against. Serial by construction.
PotentialField potential_reference(const DensityField& rho);

/// Potential at a single (r, z), on or off grid. At a grid node this follows
/// the exact arithmetic of the solver path; elsewhere the near-singular
/// correction integrates over the source cell only.
double potential_at(const DensityField& rho, double r, double z);

} // namespace rotstar::gravity
