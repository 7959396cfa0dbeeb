#include "rotstar/gravity.hpp"
#include "rotstar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace rotstar::gravity {

namespace {

// k > 0.999 in modulus, expressed on the complementary side
constexpr double kc2_threshold = 0.001999;

// 4-point Gauss-Legendre on [-1, 1]
constexpr double gl4_x[4] = {-0.8611363115940526, -0.3399810435848563,
                             0.3399810435848563, 0.8611363115940526};
constexpr double gl4_w[4] = {0.3478548451374538, 0.6521451548625461,
                             0.6521451548625461, 0.3478548451374538};

// AGM with the complementary modulus squared as input; immune to the
// cancellation in 1 - k^2 for k near 1
double elliptic_K_c2(double kc2) {
    if (!(kc2 > 0.0))
        throw InvalidParams("elliptic_K: modulus must be below 1");
    double a = 1.0;
    double b = std::sqrt(kc2);
    for (int it = 0; it < 60 && (a - b) > 4e-16 * a; ++it) {
        const double am = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = am;
    }
    return M_PI / (a + b);
}

// azimuthally integrated ring kernel 4 K(k) / sqrt((rt+rs)^2 + dz^2).
// kc2 is floored so an exact hit on a quadrature sub-node yields a huge
// finite value instead of a throw; the singularity is integrable.
inline double ring_kernel(double rt, double rs, double dz) {
    const double sum = rt + rs;
    const double dif = rt - rs;
    const double den2 = sum * sum + dz * dz;
    const double kc2 = std::max((dif * dif + dz * dz) / den2, 1e-300);
    return 4.0 * elliptic_K_c2(kc2) / std::sqrt(den2);
}

inline bool near_singular(double rt, double rs, double dz) {
    const double sum = rt + rs;
    const double dif = rt - rs;
    const double den2 = sum * sum + dz * dz;
    if (den2 == 0.0)
        return true;
    return (dif * dif + dz * dz) < kc2_threshold * den2;
}

struct RBounds {
    double lo, hi;
};

RBounds r_bounds(const AxisymGrid& g, int j) {
    const double h = g.dr();
    if (j == 0)
        return {0.0, 0.5 * h};
    if (j == g.nr)
        return {g.rmax - 0.5 * h, g.rmax};
    return {g.r(j) - 0.5 * h, g.r(j) + 0.5 * h};
}

// r'-weighted mean of the kernel over a source cell, target at axial offset
// dzc from the cell midplane. Gauss nodes are interior, so the integrable
// singularity on the diagonal is never sampled.
double cell_mean_kernel(double rt, const RBounds& rb, double dzc, double dzw) {
    const double rc = 0.5 * (rb.lo + rb.hi), rh = 0.5 * (rb.hi - rb.lo);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        const double rp = rc + rh * gl4_x[a];
        double zacc = 0.0;
        for (int b = 0; b < 4; ++b) {
            const double zeta = 0.5 * dzw * gl4_x[b];
            zacc += gl4_w[b] * ring_kernel(rt, rp, dzc - zeta);
        }
        acc += gl4_w[a] * rp * zacc;
    }
    // I = acc * rh * (dzw/2); normalize by int r' dr' * dzw over the cell
    const double rmom = 0.5 * (rb.hi * rb.hi - rb.lo * rb.lo);
    return acc * rh / (2.0 * rmom);
}

// kernel value for a (target node, source node, |dz| index) triple; the
// near-singular branch averages the two cell integrals of the pair
double node_entry(const AxisymGrid& g, int i, int j, int m) {
    const double rt = g.r(i), rs = g.r(j);
    const double dz = m * g.dz();
    if (!near_singular(rt, rs, dz))
        return ring_kernel(rt, rs, dz);
    const double v1 = cell_mean_kernel(rt, r_bounds(g, j), dz, g.dz());
    const double v2 = cell_mean_kernel(rs, r_bounds(g, i), dz, g.dz());
    return 0.5 * (v1 + v2);
}

// kernel value for an arbitrary target point against source node j
double point_entry(const AxisymGrid& g, double rt, double dz, int j) {
    const double rs = g.r(j);
    if (!near_singular(rt, rs, dz))
        return ring_kernel(rt, rs, dz);
    return cell_mean_kernel(rt, r_bounds(g, j), dz, g.dz());
}

void check_density(const DensityField& rho) {
    if (rho.values.size() != rho.grid.node_count())
        throw InvalidParams("gravity: density size does not match its grid");
    for (double v : rho.values)
        if (v < 0.0)
            throw InvalidParams("gravity: density must be nonnegative");
}

std::vector<double> weighted_density(const DensityField& rho) {
    const AxisymGrid& g = rho.grid;
    std::vector<double> wrho(g.node_count());
    for (int j = 0; j < g.nodes_r(); ++j)
        for (int l = 0; l < g.nodes_z(); ++l)
            wrho[static_cast<std::size_t>(j) * g.nodes_z() + l] =
                g.r_weight(j) * g.z_weight(l) * rho.at(j, l);
    return wrho;
}

} // namespace

double elliptic_K(double k) {
    if (!(k >= 0.0) || k >= 1.0)
        throw InvalidParams("elliptic_K: modulus must lie in [0, 1)");
    return elliptic_K_c2((1.0 - k) * (1.0 + k));
}

PotentialSolver::PotentialSolver(const AxisymGrid& grid)
    : grid_(grid), nodes_r_(grid.nodes_r()), stride_(2 * grid.nz + 1) {
    table_.resize(static_cast<std::size_t>(nodes_r_) * nodes_r_ * stride_);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nodes_r_; ++i) {
        for (int j = i; j < nodes_r_; ++j) {
            double* row_ij = &table_[(static_cast<std::size_t>(i) * nodes_r_ + j) * stride_];
            double* row_ji = &table_[(static_cast<std::size_t>(j) * nodes_r_ + i) * stride_];
            for (int m = 0; m < stride_; ++m) {
                const double v = node_entry(grid_, i, j, m);
                row_ij[m] = v;
                row_ji[m] = v;
            }
        }
    }
}

PotentialField PotentialSolver::solve(const DensityField& rho, Exec exec) const {
    if (!(rho.grid == grid_))
        throw InvalidParams("gravity: density grid does not match the solver table");
    check_density(rho);
    const int NR = grid_.nodes_r(), NZ = grid_.nodes_z();
    const std::vector<double> wrho = weighted_density(rho);
    PotentialField U{GridField::zeros(grid_)};
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < NR; ++i) {
        for (int k = 0; k < NZ; ++k) {
            double acc = 0.0;
            for (int j = 0; j < NR; ++j) {
                const double* row = &table_[(static_cast<std::size_t>(i) * NR + j) * stride_];
                const double* w = &wrho[static_cast<std::size_t>(j) * NZ];
                for (int l = 0; l < NZ; ++l)
                    acc += w[l] * (row[std::abs(k - l)] + row[k + l]);
            }
            U.at(i, k) = acc;
        }
    }
    return U;
}

PotentialField potential(const DensityField& rho) {
    return PotentialSolver(rho.grid).solve(rho);
}

PotentialField potential_reference(const DensityField& rho) {
    check_density(rho);
    const AxisymGrid& g = rho.grid;
    const int NR = g.nodes_r(), NZ = g.nodes_z();
    const std::vector<double> wrho = weighted_density(rho);
    PotentialField U{GridField::zeros(g)};
    for (int i = 0; i < NR; ++i) {
        for (int k = 0; k < NZ; ++k) {
            double acc = 0.0;
            for (int j = 0; j < NR; ++j) {
                const double* w = &wrho[static_cast<std::size_t>(j) * NZ];
                for (int l = 0; l < NZ; ++l)
                    acc += w[l] * (node_entry(g, i, j, std::abs(k - l)) +
                                   node_entry(g, i, j, k + l));
            }
            U.at(i, k) = acc;
        }
    }
    return U;
}

double potential_at(const DensityField& rho, double r, double z) {
    check_density(rho);
    const AxisymGrid& g = rho.grid;
    if (r < 0.0)
        throw InvalidParams("potential_at: r must be nonnegative");
    z = std::fabs(z);  // fields are even in z
    const int NR = g.nodes_r(), NZ = g.nodes_z();
    const std::vector<double> wrho = weighted_density(rho);

    // snap to the solver arithmetic when (r, z) is a node
    const int i = static_cast<int>(std::floor(r / g.dr() + 0.5));
    const int k = static_cast<int>(std::floor(z / g.dz() + 0.5));
    const bool on_node = i <= g.nr && k <= g.nz &&
                         std::fabs(r - g.r(i)) <= 1e-12 * (1.0 + r) &&
                         std::fabs(z - g.z(k)) <= 1e-12 * (1.0 + z);
    double acc = 0.0;
    for (int j = 0; j < NR; ++j) {
        const double* w = &wrho[static_cast<std::size_t>(j) * NZ];
        for (int l = 0; l < NZ; ++l) {
            if (w[l] == 0.0)
                continue;
            if (on_node)
                acc += w[l] * (node_entry(g, i, j, std::abs(k - l)) +
                               node_entry(g, i, j, k + l));
            else
                acc += w[l] * (point_entry(g, r, z - g.z(l), j) +
                               point_entry(g, r, z + g.z(l), j));
        }
    }
    return acc;
}

double integrate(const GridField& f) {
    const AxisymGrid& g = f.grid;
    double acc = 0.0;
    for (int j = 0; j < g.nodes_r(); ++j)
        for (int l = 0; l < g.nodes_z(); ++l)
            acc += g.cell_volume(j, l) * f.at(j, l);
    return acc;
}

double weighted_norm(const GridField& f, double s) {
    if (!(s >= 0.0))
        throw InvalidParams("weighted_norm: s must be nonnegative");
    const AxisymGrid& g = f.grid;
    double best = 0.0;
    for (int i = 0; i < g.nodes_r(); ++i)
        for (int k = 0; k < g.nodes_z(); ++k) {
            const double w = std::pow(1.0 + g.r(i) * g.r(i) + g.z(k) * g.z(k), 0.5 * s);
            best = std::max(best, w * std::fabs(f.at(i, k)));
        }
    return best;
}

} // namespace rotstar::gravity
