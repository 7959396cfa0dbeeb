#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotstar/errors.hpp"
#include "rotstar/maclaurin.hpp"

#include <cmath>
#include <random>

using namespace rotstar;
using namespace rotstar::maclaurin;

namespace {

// test-only oracle: composite Simpson under s = (u/(1-u))^2, independent of
// the adaptive implementation path
double oracle_semi_infinite(const std::function<double(double)>& f, int panels = 200000) {
    const double h = 1.0 / panels;
    double acc = 0.0;
    auto g = [&](double u) {
        if (u <= 0.0)
            return 0.0;
        u = std::min(u, 1.0 - 1e-9);  // image is continuous up to u = 1
        const double om = 1.0 - u;
        const double t = u / om;
        return f(t * t) * 2.0 * t / (om * om);
    };
    for (int i = 0; i < panels; ++i) {
        const double u0 = i * h;
        acc += (g(u0) + 4.0 * g(u0 + 0.5 * h) + g(u0 + h)) * h / 6.0;
    }
    return acc;
}

} // namespace

TEST_CASE("unit sphere coefficients") {
    const auto L = ellipsoid_coeffs(1.0, 1.0, 1.0, 1e-12);
    CHECK(L.L0 == doctest::Approx(2.0 * M_PI).epsilon(1e-11));
    CHECK(L.L1 == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-11));
    CHECK(L.L2 == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-11));
    CHECK(L.L3 == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-11));
}

TEST_CASE("trace identity L1+L2+L3 = 2 pi for random axes") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> axis(0.2, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = axis(rng), b = axis(rng), c = axis(rng);
        const auto L = ellipsoid_coeffs(a, b, c, 1e-9);
        CHECK(std::fabs(L.L1 + L.L2 + L.L3 - 2.0 * M_PI) < 1e-7);
    }
}

TEST_CASE("axis swap symmetry exchanges L1 and L2") {
    const auto L = ellipsoid_coeffs(2.0, 1.0, 0.5, 1e-11);
    const auto Ls = ellipsoid_coeffs(1.0, 2.0, 0.5, 1e-11);
    CHECK(L.L1 == doctest::Approx(Ls.L2).epsilon(1e-10));
    CHECK(L.L2 == doctest::Approx(Ls.L1).epsilon(1e-10));
    CHECK(L.L0 == doctest::Approx(Ls.L0).epsilon(1e-10));
}

TEST_CASE("coefficients of (2,1,0.5) match a brute-force oracle") {
    const double a = 2.0, b = 1.0, c = 0.5;
    const double a2 = a * a, b2 = b * b, c2 = c * c;
    const double pabc = M_PI * a * b * c;
    auto root = [&](double s) { return std::sqrt((a2 + s) * (b2 + s) * (c2 + s)); };
    const double L0 = pabc * oracle_semi_infinite([&](double s) { return 1.0 / root(s); });
    const double L1 =
        pabc * oracle_semi_infinite([&](double s) { return 1.0 / ((a2 + s) * root(s)); });
    const double L2 =
        pabc * oracle_semi_infinite([&](double s) { return 1.0 / ((b2 + s) * root(s)); });
    const double L3 =
        pabc * oracle_semi_infinite([&](double s) { return 1.0 / ((c2 + s) * root(s)); });
    const auto L = ellipsoid_coeffs(a, b, c, 1e-10);
    CHECK(std::fabs(L.L0 - L0) < 1e-8);
    CHECK(std::fabs(L.L1 - L1) < 1e-8);
    CHECK(std::fabs(L.L2 - L2) < 1e-8);
    CHECK(std::fabs(L.L3 - L3) < 1e-8);
}

TEST_CASE("omega^2 vanishes for the sphere and rejects prolate input") {
    CHECK(omega_squared(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)omega_squared(0.5), InvalidParams);
}

TEST_CASE("omega^2 at e=2 matches an independent quadrature oracle") {
    const double e2 = 4.0;
    auto reduced = [&](double s) {
        const double p = 1.0 + s;
        const double q = 1.0 + e2 * s;
        return (1.0 / p - 1.0 / q) / (p * std::sqrt(q));
    };
    const double w2_oracle = 2.0 * M_PI * oracle_semi_infinite(reduced);
    const double w2 = omega_squared(2.0, 1e-10);
    CHECK(w2 > 0.0);
    CHECK(std::fabs(w2 - w2_oracle) < 1e-8);
}

TEST_CASE("omega^2 decays to zero for extreme ellipticity") {
    CHECK(omega_squared(1e4, 1e-10) < 1e-3);
    CHECK(omega_squared(1e4, 1e-10) > 0.0);
}

TEST_CASE("reduced and coefficient forms agree over the sequence") {
    for (double e : {1.0, 1.5, 2.0, 5.0, 20.0}) {
        const double w2 = omega_squared(e, 1e-10);
        const double a = std::cbrt(e);
        const double c = 1.0 / (a * a);
        const auto L = ellipsoid_coeffs(a, a, c, 1e-11);
        const double w2_L = 2.0 * (L.L1 - (c * c) / (a * a) * L.L3);
        CHECK(std::fabs(w2 - w2_L) < 1e-8);
    }
}

TEST_CASE("degenerate range collapses to the static sphere") {
    const auto fam = family(1.0, 1.0, 1, 1e-10);
    REQUIRE(fam.members.size() == 1);
    CHECK(fam.members[0].e == 1.0);
    CHECK(fam.members[0].omega2 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("family on [1,100] has an interior omega^2 maximum and decays past it") {
    const auto fam = family(1.0, 100.0, 200, 1e-9);
    REQUIRE(fam.members.size() == 200);
    CHECK(fam.peak_index > 0);
    CHECK(fam.peak_index < fam.members.size() - 1);
    for (std::size_t i = fam.peak_index + 1; i < fam.members.size(); ++i)
        CHECK(fam.members[i].omega2 < fam.members[i - 1].omega2);
    // equatorial axis grows without bound along the sequence
    for (const auto& m : fam.members) {
        CHECK(m.a == doctest::Approx(std::cbrt(m.e)).epsilon(1e-14));
        CHECK(m.a * m.a * m.c == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(std::cbrt(1000.0) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("boundary constancy holds to quadrature accuracy") {
    CHECK(boundary_residual(1.0, 20) < 1e-10);
    CHECK(boundary_residual(2.0, 20) < 1e-8);
    CHECK(boundary_residual(5.0, 50) < 1e-8);
    // sphere: potential alone on the boundary is L0 - L1 = 4 pi / 3
    const auto L = ellipsoid_coeffs(1.0, 1.0, 1.0, 1e-12);
    CHECK(L.L0 - L.L1 == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-11));
}

TEST_CASE("family input validation") {
    CHECK_THROWS_AS((void)family(0.5, 2.0, 10), InvalidParams);
    CHECK_THROWS_AS((void)family(2.0, 1.0, 10), InvalidParams);
}
