#pragma once

#include "rotstar/errors.hpp"

#include <cmath>
#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

namespace rotstar::quadrature {

struct Result {
    double value = 0.0;
    double error = 0.0;  // accumulated per-panel estimate
    int panels = 0;      // panels accepted
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1], positive half.
inline constexpr double gk_node[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
inline constexpr double gauss_w[8] = {
    0.417959183673469, 0.0, 0.381830050505119, 0.0,
    0.279705391489277, 0.0, 0.129484966168870, 0.0};
inline constexpr double kronrod_w[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double f0 = f(mid);
    double g = gauss_w[0] * f0;
    double k = kronrod_w[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = hw * gk_node[i];
        const double fs = f(mid + dx) + f(mid - dx);
        g += gauss_w[i] * fs;
        k += kronrod_w[i] * fs;
    }
    value = k * hw;
    const double d = std::fabs(k - g) * std::fabs(hw);
    // standard scaled estimate; sharper than the raw Gauss-Kronrod gap
    err = std::min(d, std::pow(200.0 * d, 1.5));
}

} // namespace detail

/// Adaptive Gauss-Legendre panels on [a,b] with an embedded Kronrod error
/// estimate. The panel with the worst estimate is bisected until the summed
/// estimate meets abs_tol; this converges for integrable endpoint
/// singularities where width-proportional budgets stall.
template <class F>
Result integrate(const F& f, double a, double b, double abs_tol, int max_panels = 4000) {
    if (!(abs_tol > 0.0))
        throw InvalidParams("quadrature: tolerance must be positive");
    Result res;
    if (a == b)
        return res;
    struct Seg {
        double a, b, value, error;
        bool operator<(const Seg& o) const { return error < o.error; }
    };
    double v0, e0;
    detail::gk15(f, a, b, v0, e0);
    std::priority_queue<Seg> heap;
    heap.push({a, b, v0, e0});
    double total_err = e0;
    while (total_err > abs_tol) {
        if (static_cast<int>(heap.size()) >= max_panels)
            throw QuadratureFailure("quadrature: panel budget exhausted");
        Seg s = heap.top();
        if (s.error <= 1e-300 || s.b - s.a < 1e-15 * std::fabs(b - a))
            break;  // nothing left to refine
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        double vl, el, vr, er;
        detail::gk15(f, s.a, m, vl, el);
        detail::gk15(f, m, s.b, vr, er);
        total_err += el + er - s.error;
        heap.push({s.a, m, vl, el});
        heap.push({m, s.b, vr, er});
    }
    if (total_err > abs_tol)
        throw QuadratureFailure("quadrature: tolerance unreachable, interval exhausted");
    while (!heap.empty()) {
        res.value += heap.top().value;
        res.error += heap.top().error;
        ++res.panels;
        heap.pop();
    }
    return res;
}

/// Integral over [0,inf) via the substitution s = t/(1-t), t in [0,1).
/// Smooth and bounded for integrands decaying like s^{-5/2} or faster;
/// the quadrature nodes never touch t = 1.
template <class F>
Result integrate_semi_infinite(const F& f, double abs_tol, int max_panels = 4000) {
    auto g = [&f](double t) {
        const double om = 1.0 - t;
        const double s = t / om;
        return f(s) / (om * om);
    };
    return integrate(g, 0.0, 1.0, abs_tol, max_panels);
}

/// Same, via s = (t/(1-t))^2. Bounded image for tails as slow as s^{-3/2},
/// which the plain map turns into an endpoint singularity.
template <class F>
Result integrate_semi_infinite_sqrt(const F& f, double abs_tol, int max_panels = 4000) {
    auto g = [&f](double t) {
        const double om = 1.0 - t;
        const double u = t / om;
        return f(u * u) * 2.0 * u / (om * om);
    };
    return integrate(g, 0.0, 1.0, abs_tol, max_panels);
}

/// Composite quadrature over (possibly non-uniform) samples: quadratic fit
/// through consecutive point triples, trapezoid fallback for a single panel.
/// Returns {value, |value - trapezoid|} as a conservative error estimate.
inline std::pair<double, double> samples_integrate(const std::vector<double>& x,
                                                   const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2)
        throw InvalidParams("samples_integrate: need matching samples, at least two");
    double trap = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        trap += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    if (n == 2)
        return {trap, 0.0};
    // integrate the parabola through (x0,x1,x2) over segment [xa,xb];
    // Newton form p(t) = y0 + b*u + c2*u*(u - d01) with u = t - x0
    auto quad_panel = [&](std::size_t i0, double xa, double xb) {
        const double x0 = x[i0], x1 = x[i0 + 1], x2 = x[i0 + 2];
        const double y0 = y[i0], y1 = y[i0 + 1], y2 = y[i0 + 2];
        const double d01 = x1 - x0, d02 = x2 - x0, d12 = x2 - x1;
        const double c2 = (y0 / (d01 * d02)) - (y1 / (d01 * d12)) + (y2 / (d02 * d12));
        const double b = (y1 - y0) / d01;
        auto prim = [&](double t) {
            const double u = t - x0;
            return y0 * u + 0.5 * b * u * u + c2 * (u * u * u / 3.0 - 0.5 * d01 * u * u);
        };
        return prim(xb) - prim(xa);
    };
    double simp = 0.0;
    std::size_t i = 0;
    while (i + 2 < n) {
        simp += quad_panel(i, x[i], x[i + 2]);
        i += 2;
    }
    if (i + 1 < n)  // odd tail: quadratic through the last three, last panel only
        simp += quad_panel(n - 3, x[n - 2], x[n - 1]);
    return {simp, std::fabs(simp - trap)};
}

} // namespace rotstar::quadrature
