#include "rotstar/radial.hpp"
#include "rotstar/errors.hpp"
#include "rotstar/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace rotstar::radial {

namespace {

constexpr double four_pi = 4.0 * M_PI;

inline double upow(double u, double q) {
    return u > 0.0 ? std::pow(u, q) : 0.0;
}

struct State {
    double u, v;  // v = u'
};

inline State rhs(double xi, const State& s, double q) {
    return {s.v, -four_pi * upow(s.u, q) - 2.0 * s.v / xi};
}

// Cash-Karp embedded 5(4) pair.
struct CkStep {
    State y5;       // 5th order advance
    double err;     // max component error scaled by atol/rtol
};

CkStep cash_karp(double xi, const State& y, double h, double q, double atol, double rtol) {
    auto f = [&](double x, const State& s) { return rhs(x, s, q); };
    const State k1 = f(xi, y);
    const State k2 = f(xi + h / 5.0, {y.u + h * k1.u / 5.0, y.v + h * k1.v / 5.0});
    const State k3 = f(xi + 3.0 * h / 10.0,
                       {y.u + h * (3.0 * k1.u + 9.0 * k2.u) / 40.0,
                        y.v + h * (3.0 * k1.v + 9.0 * k2.v) / 40.0});
    const State k4 = f(xi + 3.0 * h / 5.0,
                       {y.u + h * (0.3 * k1.u - 0.9 * k2.u + 1.2 * k3.u),
                        y.v + h * (0.3 * k1.v - 0.9 * k2.v + 1.2 * k3.v)});
    const State k5 = f(xi + h,
                       {y.u + h * (-11.0 / 54.0 * k1.u + 2.5 * k2.u - 70.0 / 27.0 * k3.u +
                                   35.0 / 27.0 * k4.u),
                        y.v + h * (-11.0 / 54.0 * k1.v + 2.5 * k2.v - 70.0 / 27.0 * k3.v +
                                   35.0 / 27.0 * k4.v)});
    const State k6 = f(xi + 7.0 * h / 8.0,
                       {y.u + h * (1631.0 / 55296.0 * k1.u + 175.0 / 512.0 * k2.u +
                                   575.0 / 13824.0 * k3.u + 44275.0 / 110592.0 * k4.u +
                                   253.0 / 4096.0 * k5.u),
                        y.v + h * (1631.0 / 55296.0 * k1.v + 175.0 / 512.0 * k2.v +
                                   575.0 / 13824.0 * k3.v + 44275.0 / 110592.0 * k4.v +
                                   253.0 / 4096.0 * k5.v)});
    const double b5[6] = {37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0};
    const double b4[6] = {2825.0 / 27648.0, 0.0, 18575.0 / 48384.0, 13525.0 / 55296.0,
                          277.0 / 14336.0, 0.25};
    const State ks[6] = {k1, k2, k3, k4, k5, k6};
    State y5 = y, y4 = y;
    for (int i = 0; i < 6; ++i) {
        y5.u += h * b5[i] * ks[i].u;
        y5.v += h * b5[i] * ks[i].v;
        y4.u += h * b4[i] * ks[i].u;
        y4.v += h * b4[i] * ks[i].v;
    }
    const double su = atol + rtol * std::max(std::fabs(y.u), std::fabs(y5.u));
    const double sv = atol + rtol * std::max(std::fabs(y.v), std::fabs(y5.v));
    const double err = std::max(std::fabs(y5.u - y4.u) / su, std::fabs(y5.v - y4.v) / sv);
    return {y5, err};
}

// Series about the regular center: u = a(1 - x^2/6 + q x^4/120), x = beta*xi,
// beta^2 = 4 pi a^{q-1}.
struct Series {
    double a, q, beta;
    double u(double xi) const {
        const double x2 = beta * beta * xi * xi;
        return a * (1.0 - x2 / 6.0 + q * x2 * x2 / 120.0);
    }
    double v(double xi) const {
        const double b2 = beta * beta;
        return a * (-b2 * xi / 3.0 + q * b2 * b2 * xi * xi * xi / 30.0);
    }
};

// Cubic Hermite evaluation of u on a bracketing step [x0, x1].
struct Hermite {
    double x0, x1, u0, u1, v0, v1;
    double operator()(double x) const {
        const double h = x1 - x0;
        const double t = (x - x0) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2.0 * t3 - 3.0 * t2 + 1.0) * u0 + (t3 - 2.0 * t2 + t) * h * v0 +
               (-2.0 * t3 + 3.0 * t2) * u1 + (t3 - t2) * h * v1;
    }
};

} // namespace

PolytropeParams PolytropeParams::make(double gamma, double a) {
    if (!(gamma > 1.0))
        throw InvalidParams("polytrope: gamma must exceed 1");
    if (!(a > 0.0))
        throw InvalidParams("polytrope: central value must be positive");
    return {gamma, 1.0 / (gamma - 1.0), a};
}

double RadialProfile::value_at(double r) const {
    if (r < 0.0 || r >= R || xi.size() < 2)
        return 0.0;
    auto it = std::upper_bound(xi.begin(), xi.end(), r);
    if (it == xi.begin())
        return u.front();
    if (it == xi.end())
        return 0.0;
    const std::size_t i = static_cast<std::size_t>(it - xi.begin());
    const double t = (r - xi[i - 1]) / (xi[i] - xi[i - 1]);
    return (1.0 - t) * u[i - 1] + t * u[i];
}

double RadialProfile::density_at(double r) const {
    const double uu = value_at(r);
    return uu > 0.0 ? std::pow(uu, q) : 0.0;
}

RadialProfile solve_lane_emden(const PolytropeParams& params, double step, double tol,
                               double xi_max) {
    if (!(params.gamma > 1.0))
        throw InvalidParams("solve_lane_emden: gamma must exceed 1");
    if (!(step > 0.0) || !(tol > 0.0) || !(xi_max > step))
        throw InvalidParams("solve_lane_emden: step, tol and xi_max must be positive");
    const double a = params.a;
    const double q = params.q;

    const double beta = std::sqrt(four_pi * std::pow(a, q - 1.0));
    const Series ser{a, q, beta};
    const double xi_series = 0.005 / beta;  // (beta*xi)^6 truncation below 2e-17
    if (xi_series >= xi_max)  // u is still at its center plateau at the cutoff
        throw NoFiniteRadius("solve_lane_emden: no zero crossing before xi_max");

    RadialProfile prof;
    prof.gamma = params.gamma;
    prof.q = q;
    prof.a = a;
    prof.xi.push_back(0.0);
    prof.u.push_back(a);

    const double atol = 1e-14 * a;
    const double rtol = 1e-12;

    double xi = 0.0;
    State y{a, 0.0};
    std::size_t n_out = 1;  // next output node index
    bool crossed = false;
    double xa = 0.0, xb = 0.0;  // bracketing step
    State ya{}, yb{};

    // leave the center on the series
    {
        const double x_start = xi_series;
        while (n_out * step < x_start) {
            const double xo = n_out * step;
            prof.xi.push_back(xo);
            prof.u.push_back(ser.u(xo));
            ++n_out;
        }
        xi = x_start;
        y = {ser.u(x_start), ser.v(x_start)};
    }

    double h = std::min(step, 0.1 / beta);
    while (xi < xi_max) {
        const double target = n_out * step;
        bool hit_output = false;
        double h_try = h;
        if (xi + h_try >= target) {
            h_try = target - xi;
            hit_output = true;
        }
        const CkStep st = cash_karp(xi, y, h_try, q, atol, rtol);
        if (st.err > 1.0 && h_try > 1e-13 * (1.0 + xi)) {
            h = std::max(0.9 * h_try * std::pow(st.err, -0.25), 1e-3 * h_try);
            continue;
        }
        // accepted
        if (st.y5.u <= 0.0) {
            crossed = true;
            xa = xi;
            xb = xi + h_try;
            ya = y;
            yb = st.y5;
            break;
        }
        xi = hit_output ? target : xi + h_try;
        y = st.y5;
        if (hit_output) {
            prof.xi.push_back(xi);
            prof.u.push_back(y.u);
            ++n_out;
        }
        if (st.err > 1e-4)
            h = 0.9 * h_try * std::pow(st.err, -0.2);
        else
            h = 2.0 * h_try;
        h = std::min(h, step);
    }

    if (!crossed)
        throw NoFiniteRadius("solve_lane_emden: no zero crossing before xi_max");

    // locate the first zero inside [xa, xb] on the Hermite interpolant
    const Hermite hu{xa, xb, ya.u, yb.u, ya.v, yb.v};
    double lo = xa, hi = xb;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (hu(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double R = 0.5 * (lo + hi);
    prof.R = R;
    prof.r_err = tol + std::pow(xb - xa, 5);
    if (prof.xi.back() < R) {
        prof.xi.push_back(R);
        prof.u.push_back(0.0);
    }
    prof.M = mass_of(prof);
    {
        std::vector<double> integrand(prof.xi.size());
        for (std::size_t i = 0; i < prof.xi.size(); ++i)
            integrand[i] = four_pi * prof.xi[i] * prof.xi[i] * upow(prof.u[i], q);
        prof.m_err = quadrature::samples_integrate(prof.xi, integrand).second + 1e-14 * prof.M;
    }
    return prof;
}

double mass_of(const RadialProfile& profile) {
    if (profile.xi.size() != profile.u.size() || profile.xi.empty())
        throw InvalidParams("mass_of: malformed profile");
    if (profile.xi.size() < 2)
        return 0.0;
    std::vector<double> integrand(profile.xi.size());
    for (std::size_t i = 0; i < profile.xi.size(); ++i)
        integrand[i] =
            four_pi * profile.xi[i] * profile.xi[i] * upow(profile.u[i], profile.q);
    return quadrature::samples_integrate(profile.xi, integrand).first;
}

double mass_exponent(double gamma) {
    if (!(gamma > 6.0 / 5.0) || !(gamma <= 2.0))
        throw InvalidParams("mass_exponent: gamma must lie in (6/5, 2]");
    return (3.0 * gamma - 4.0) / (2.0 * gamma - 2.0);
}

RadialProfile rescale(const RadialProfile& profile, double lambda) {
    if (!(lambda > 0.0))
        throw InvalidParams("rescale: lambda must be positive");
    if (profile.gamma == 2.0)
        throw InvalidParams("rescale: scaling exponent is singular at gamma = 2");
    const double s = (2.0 * profile.gamma - 2.0) / (2.0 - profile.gamma);
    const double factor = std::pow(lambda, s);
    RadialProfile out = profile;
    for (std::size_t i = 0; i < out.xi.size(); ++i) {
        out.xi[i] = profile.xi[i] / lambda;
        out.u[i] = factor * profile.u[i];
    }
    out.R = profile.R / lambda;
    out.a = factor * profile.a;
    out.r_err = profile.r_err / lambda;
    out.M = mass_of(out);
    out.m_err = profile.m_err * std::pow(lambda, s * profile.q - 3.0);
    return out;
}

} // namespace rotstar::radial
