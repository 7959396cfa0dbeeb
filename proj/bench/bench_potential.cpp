// Timing comparison of the potential evaluation paths:
//   - kernel-table solve, OpenMP over target nodes
//   - kernel-table solve, serial
//   - table-free direct summation (the test reference)
// plus the table build itself. Usage: bench_potential [n] [with-reference]

#include "rotstar/gravity.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

using namespace rotstar::gravity;

namespace {

template <class F>
double timed(const F& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 96;
    const bool with_reference = argc > 2 && std::strcmp(argv[2], "with-reference") == 0;
    const auto grid = AxisymGrid::make(n, n, 2.0, 2.0);
    DensityField rho{GridField::zeros(grid)};
    for (int i = 0; i < grid.nodes_r(); ++i)
        for (int k = 0; k < grid.nodes_z(); ++k) {
            const double d2 = grid.r(i) * grid.r(i) + grid.z(k) * grid.z(k);
            rho.at(i, k) = std::exp(-4.0 * d2);
        }

#ifdef _OPENMP
    std::printf("grid %dx%d, OpenMP threads: %d\n", n, n, omp_get_max_threads());
#else
    std::printf("grid %dx%d, OpenMP not enabled\n", n, n);
#endif

    PotentialSolver* solver = nullptr;
    const double t_table = timed([&] { solver = new PotentialSolver(grid); });
    std::printf("kernel table build:   %8.3f s\n", t_table);

    PotentialField Up, Us;
    const double t_par = timed([&] { Up = solver->solve(rho, Exec::parallel); });
    std::printf("solve (parallel):     %8.3f s\n", t_par);
    const double t_ser = timed([&] { Us = solver->solve(rho, Exec::serial); });
    std::printf("solve (serial):       %8.3f s   speedup x%.2f\n", t_ser, t_ser / t_par);

    double dmax = 0.0;
    for (std::size_t m = 0; m < Up.values.size(); ++m)
        dmax = std::max(dmax, std::fabs(Up.values[m] - Us.values[m]));
    std::printf("parallel-serial max |dU|: %.3e\n", dmax);

    if (with_reference) {
        PotentialField Ur;
        const double t_ref = timed([&] { Ur = potential_reference(rho); });
        double rmax_err = 0.0;
        for (std::size_t m = 0; m < Up.values.size(); ++m)
            rmax_err = std::max(rmax_err, std::fabs(Up.values[m] - Ur.values[m]));
        std::printf("reference (no table): %8.3f s   speedup x%.2f, max |dU| %.3e\n", t_ref,
                    t_ref / t_par, rmax_err);
    }
    delete solver;
    return 0;
}
