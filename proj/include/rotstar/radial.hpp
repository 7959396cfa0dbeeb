#pragma once

#include <vector>

namespace rotstar::radial {

/// Power-law equation-of-state parameters for the radial problem.
struct PolytropeParams {
    double gamma;  // adiabatic exponent, > 1
    double q;      // 1/(gamma - 1)
    double a;      // central value u(0), > 0

    static PolytropeParams make(double gamma, double a);
};

/// A radial solution u(xi) with its first zero R and total mass M.
/// Samples are stored on a uniform grid of spacing `step` plus the exact
/// endpoint (R, 0). r_err / m_err are conservative error estimates: a halved
/// step changes R and M by less than them.
struct RadialProfile {
    std::vector<double> xi;
    std::vector<double> u;
    double R = 0.0;
    double M = 0.0;
    double gamma = 0.0;
    double q = 0.0;
    double a = 0.0;
    double r_err = 0.0;
    double m_err = 0.0;

    /// Linear interpolation of u at radius r; zero outside [0, R].
    double value_at(double r) const;
    /// Density u_+^q at radius r.
    double density_at(double r) const;
};

/// Integrate u'' + (2/xi) u' + 4 pi u_+^q = 0 from u(0)=a, u'(0)=0 out to the
/// first zero of u. Adaptive embedded RK45 stepping clipped to the uniform
/// output grid; R located by bisection on the bracketing step plus cubic
/// interpolation to tolerance tol.
/// Throws NoFiniteRadius when no crossing occurs before xi_max (q >= 5),
/// InvalidParams for gamma <= 1 or nonpositive step/tol.
RadialProfile solve_lane_emden(const PolytropeParams& params, double step = 1e-3,
                               double tol = 1e-10, double xi_max = 100.0);

/// Total mass 4 pi \int xi^2 u_+^q dxi by composite quadrature on the samples.
double mass_of(const RadialProfile& profile);

/// Exponent of the central-value mass law: d log M / d log a = (3g-4)/(2g-2).
double mass_exponent(double gamma);

/// Apply the scaling symmetry: xi' = xi/lambda, u' = lambda^{(2g-2)/(2-g)} u.
/// Undefined at gamma = 2 (singular exponent).
RadialProfile rescale(const RadialProfile& profile, double lambda);

} // namespace rotstar::radial
