#pragma once

#include <cstddef>
#include <vector>

namespace rotstar::maclaurin {

/// Interior-potential coefficients of a homogeneous ellipsoid with semi-axes
/// (a, b, c), unit density, G = 1:
///   U(x) = L0 - L1 x1^2 - L2 x2^2 - L3 x3^2  inside the body.
struct EllipsoidCoeffs {
    double L0, L1, L2, L3;
};

/// One member of the axisymmetric sequence, volume-normalized to a^2 c = 1.
struct Spheroid {
    double e;       // ellipticity a/c, >= 1
    double a;       // equatorial semi-axis e^{1/3}
    double c;       // polar semi-axis e^{-2/3}
    double omega2;  // squared angular velocity of rigid rotation
};

struct Family {
    std::vector<Spheroid> members;
    std::size_t peak_index = 0;  // member with maximal omega2
};

/// Evaluate the four coefficient integrals by adaptive quadrature to absolute
/// tolerance tol. Throws InvalidParams for nonpositive axes, QuadratureFailure
/// if the evaluation budget is exhausted.
EllipsoidCoeffs ellipsoid_coeffs(double a, double b, double c, double tol = 1e-10);

/// Squared angular velocity of the spheroid with ellipticity e >= 1, from the
/// reduced one-parameter integral. The equivalent L-coefficient form is
/// evaluated as well and must agree within 10*tol.
double omega_squared(double e, double tol = 1e-10);

/// Sample the sequence on [e_min, e_max] with n members (linear in e).
Family family(double e_min, double e_max, std::size_t n, double tol = 1e-10);

/// Spread (max - min) of  (1/2) w^2 (x1^2+x2^2) + U  over npts boundary
/// points; zero up to quadrature error when omega2 solves the sequence
/// condition.
double boundary_residual(double e, std::size_t npts, double tol = 1e-10);

} // namespace rotstar::maclaurin
