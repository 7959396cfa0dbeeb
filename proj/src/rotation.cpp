#include "rotstar/rotation.hpp"
#include "rotstar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rotstar::rotation {

namespace {

// tail estimates larger than this fraction of j(s_end) mean the table was
// truncated before the profile had decayed
constexpr double tail_rel_limit = 1e-5;

// exact integral of s * w2(s) over [s0, s0+T] for w2 linear on the panel
inline double panel_j(double s0, double w0, double slope, double T) {
    return s0 * w0 * T + 0.5 * (w0 + s0 * slope) * T * T + slope * T * T * T / 3.0;
}

} // namespace

RotationProfile RotationProfile::power_decay(double omega_bar, double p) {
    if (!(p > 1.0))
        throw InvalidParams("rotation: power_decay needs p > 1 for a finite j limit");
    RotationProfile prof;
    prof.kind_ = Kind::power_decay;
    prof.omega_bar_ = omega_bar;
    prof.p_ = p;
    prof.delta_ = 2.0 * (p - 1.0);
    prof.j_inf_ = omega_bar * omega_bar / (2.0 * (p - 1.0));
    return prof;
}

RotationProfile RotationProfile::gaussian(double omega_bar) {
    RotationProfile prof;
    prof.kind_ = Kind::gaussian;
    prof.omega_bar_ = omega_bar;
    prof.delta_ = std::numeric_limits<double>::infinity();
    prof.j_inf_ = 0.5 * omega_bar * omega_bar;
    return prof;
}

RotationProfile RotationProfile::tabulated(std::vector<std::pair<double, double>> table) {
    if (table.size() < 2)
        throw InvalidParams("rotation: table needs at least two samples");
    if (table.front().first != 0.0)
        throw InvalidParams("rotation: table must start at s = 0");
    RotationProfile prof;
    prof.kind_ = Kind::tabulated;
    prof.s_.reserve(table.size());
    prof.w2_.reserve(table.size());
    for (const auto& [s, w2] : table) {
        if (!prof.s_.empty() && s <= prof.s_.back())
            throw InvalidParams("rotation: table radii must be strictly increasing");
        if (w2 < 0.0)
            throw InvalidParams("rotation: w^2 must be nonnegative");
        prof.s_.push_back(s);
        prof.w2_.push_back(w2);
    }
    prof.cum_.resize(prof.s_.size(), 0.0);
    for (std::size_t i = 1; i < prof.s_.size(); ++i) {
        const double h = prof.s_[i] - prof.s_[i - 1];
        const double slope = (prof.w2_[i] - prof.w2_[i - 1]) / h;
        prof.cum_[i] = prof.cum_[i - 1] + panel_j(prof.s_[i - 1], prof.w2_[i - 1], slope, h);
    }
    prof.omega_bar_ = std::sqrt(*std::max_element(prof.w2_.begin(), prof.w2_.end()));

    // tail fitted as w^2 ~ s^{-beta} past the table end
    const double w_end = prof.w2_.back();
    double tail = 0.0;
    if (w_end > 0.0) {
        const std::size_t n = prof.s_.size();
        const double w_prev = prof.w2_[n - 2];
        const double s_prev = prof.s_[n - 2];
        const double s_end = prof.s_.back();
        if (!(w_prev > w_end) || s_prev <= 0.0)
            throw InvalidParams("rotation: table tail is not decaying");
        const double beta = -std::log(w_end / w_prev) / std::log(s_end / s_prev);
        if (!(beta > 2.0))
            throw InvalidParams("rotation: table tail decays too slowly, j diverges");
        tail = w_end * s_end * s_end / (beta - 2.0);
        prof.delta_ = beta - 2.0;
        if (tail > tail_rel_limit * std::max(prof.cum_.back(), 1e-300))
            throw InvalidParams("rotation: table truncated before the profile decayed");
    } else {
        prof.delta_ = std::numeric_limits<double>::infinity();
    }
    prof.j_inf_ = prof.cum_.back() + tail;
    return prof;
}

double RotationProfile::omega2_at(double s) const {
    if (s < 0.0)
        throw InvalidParams("rotation: radius must be nonnegative");
    const double w2bar = omega_bar_ * omega_bar_;
    switch (kind_) {
    case Kind::power_decay:
        return w2bar * std::pow(1.0 + s * s, -p_);
    case Kind::gaussian:
        return w2bar * std::exp(-s * s);
    case Kind::tabulated: {
        if (s >= s_.back())
            return 0.0;
        const auto it = std::upper_bound(s_.begin(), s_.end(), s);
        const std::size_t i = static_cast<std::size_t>(it - s_.begin());
        if (i == 0)
            return w2_.front();
        const double t = (s - s_[i - 1]) / (s_[i] - s_[i - 1]);
        return (1.0 - t) * w2_[i - 1] + t * w2_[i];
    }
    }
    return 0.0;
}

double RotationProfile::j_of(double r) const {
    if (r < 0.0)
        throw InvalidParams("rotation: radius must be nonnegative");
    const double w2bar = omega_bar_ * omega_bar_;
    switch (kind_) {
    case Kind::power_decay:
        return w2bar / (2.0 * (p_ - 1.0)) * (1.0 - std::pow(1.0 + r * r, 1.0 - p_));
    case Kind::gaussian:
        return 0.5 * w2bar * (1.0 - std::exp(-r * r));
    case Kind::tabulated: {
        if (r >= s_.back())
            return cum_.back();
        const auto it = std::upper_bound(s_.begin(), s_.end(), r);
        const std::size_t i = static_cast<std::size_t>(it - s_.begin());
        if (i == 0)
            return 0.0;
        const double h = s_[i] - s_[i - 1];
        const double slope = (w2_[i] - w2_[i - 1]) / h;
        return cum_[i - 1] + panel_j(s_[i - 1], w2_[i - 1], slope, r - s_[i - 1]);
    }
    }
    return 0.0;
}

double RotationProfile::j_infinity() const {
    return j_inf_;
}

double RotationProfile::effective_radius(double eps) const {
    if (!(eps > 0.0))
        throw InvalidParams("rotation: eps must be positive");
    switch (kind_) {
    case Kind::power_decay: {
        if (j_inf_ <= eps)
            return 0.0;
        const double g = std::pow(j_inf_ / eps, 1.0 / (p_ - 1.0)) - 1.0;
        return g > 0.0 ? std::sqrt(g) : 0.0;
    }
    case Kind::gaussian: {
        const double half = 0.5 * omega_bar_ * omega_bar_;
        if (half <= eps)
            return 0.0;
        return std::sqrt(std::log(half / eps));
    }
    case Kind::tabulated: {
        for (std::size_t i = 0; i < s_.size(); ++i)
            if (j_inf_ - cum_[i] <= eps)
                return s_[i];
        return s_.back();
    }
    }
    return 0.0;
}

} // namespace rotstar::rotation
