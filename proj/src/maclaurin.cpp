#include "rotstar/maclaurin.hpp"
#include "rotstar/errors.hpp"
#include "rotstar/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace rotstar::maclaurin {

namespace quad = rotstar::quadrature;

EllipsoidCoeffs ellipsoid_coeffs(double a, double b, double c, double tol) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw InvalidParams("ellipsoid_coeffs: semi-axes must be positive");
    if (!(tol > 0.0))
        throw InvalidParams("ellipsoid_coeffs: tolerance must be positive");
    const double pabc = M_PI * a * b * c;
    const double a2 = a * a, b2 = b * b, c2 = c * c;
    auto root = [=](double s) {
        return std::sqrt((a2 + s) * (b2 + s) * (c2 + s));
    };
    EllipsoidCoeffs out{};
    // the L0 tail decays like s^{-3/2}; the sqrt map keeps its image bounded
    out.L0 = pabc * quad::integrate_semi_infinite_sqrt(
                        [&](double s) { return 1.0 / root(s); }, tol / pabc)
                        .value;
    out.L1 = pabc * quad::integrate_semi_infinite(
                        [&](double s) { return 1.0 / ((a2 + s) * root(s)); }, tol / pabc)
                        .value;
    out.L2 = pabc * quad::integrate_semi_infinite(
                        [&](double s) { return 1.0 / ((b2 + s) * root(s)); }, tol / pabc)
                        .value;
    out.L3 = pabc * quad::integrate_semi_infinite(
                        [&](double s) { return 1.0 / ((c2 + s) * root(s)); }, tol / pabc)
                        .value;
    return out;
}

double omega_squared(double e, double tol) {
    if (!(e >= 1.0))
        throw InvalidParams("omega_squared: spheroids are oblate, e must be >= 1");
    const double e2 = e * e;
    auto reduced = [&](double s) {
        const double p = 1.0 + s;
        const double q = 1.0 + e2 * s;
        return 1.0 / (p * std::sqrt(q)) * (1.0 / p - 1.0 / q);
    };
    const double w2 = 2.0 * M_PI * quad::integrate_semi_infinite(reduced, tol / (2.0 * M_PI)).value;

    // cross-check against the coefficient form on the normalized axes
    const double a = std::cbrt(e);
    const double c = 1.0 / (a * a);
    const auto L = ellipsoid_coeffs(a, a, c, 0.1 * tol);
    const double w2_L = 2.0 * (L.L1 - (c * c) / (a * a) * L.L3);
    if (std::fabs(w2 - w2_L) > 10.0 * tol)
        throw QuadratureFailure("omega_squared: reduced and coefficient forms disagree");
    return w2;
}

Family family(double e_min, double e_max, std::size_t n, double tol) {
    if (!(e_min >= 1.0) || !(e_max >= e_min))
        throw InvalidParams("family: need 1 <= e_min <= e_max");
    if (n == 0 || (n == 1 && e_max != e_min))
        throw InvalidParams("family: need at least two members for a proper range");
    Family fam;
    fam.members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double e =
            (n == 1) ? e_min : e_min + (e_max - e_min) * static_cast<double>(i) / (n - 1);
        const double a = std::cbrt(e);
        fam.members.push_back({e, a, 1.0 / (a * a), omega_squared(e, tol)});
    }
    for (std::size_t i = 1; i < n; ++i)
        if (fam.members[i].omega2 > fam.members[fam.peak_index].omega2)
            fam.peak_index = i;
    return fam;
}

double boundary_residual(double e, std::size_t npts, double tol) {
    if (!(e >= 1.0))
        throw InvalidParams("boundary_residual: e must be >= 1");
    npts = std::max<std::size_t>(npts, 2);
    const double a = std::cbrt(e);
    const double c = 1.0 / (a * a);
    const double w2 = omega_squared(e, tol);
    const auto L = ellipsoid_coeffs(a, a, c, tol);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        const double th = 0.5 * M_PI * static_cast<double>(i) / (npts - 1);
        const double s2 = a * a * std::sin(th) * std::sin(th);  // x1^2 + x2^2
        const double z2 = c * c * std::cos(th) * std::cos(th);
        const double phi = 0.5 * w2 * s2 + (L.L0 - L.L1 * s2 - L.L3 * z2);
        if (i == 0)
            lo = hi = phi;
        lo = std::min(lo, phi);
        hi = std::max(hi, phi);
    }
    return hi - lo;
}

} // namespace rotstar::maclaurin
