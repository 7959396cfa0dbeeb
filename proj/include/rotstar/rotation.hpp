#pragma once

#include <utility>
#include <vector>

namespace rotstar::rotation {

/// A squared angular velocity profile w^2(s) over cylindrical radius, with a
/// finite centrifugal integral j(r) = int_0^r w^2(s) s ds and limit j_inf.
///
/// Built-in kinds:
///   power_decay  w^2(s) = wbar^2 (1+s^2)^{-p}, p > 1       (closed forms)
///   gaussian     w^2(s) = wbar^2 exp(-s^2)                 (closed forms)
///   tabulated    piecewise-linear w^2 through given samples; w^2 = 0 past
///                the table end. j_infinity adds a power-law tail estimate
///                fitted to the last samples and rejects tables whose implied
///                tail decays too slowly to be negligible.
class RotationProfile {
public:
    enum class Kind { power_decay, gaussian, tabulated };

    static RotationProfile power_decay(double omega_bar, double p);
    static RotationProfile gaussian(double omega_bar);
    static RotationProfile tabulated(std::vector<std::pair<double, double>> table);

    Kind kind() const { return kind_; }
    double omega_bar() const { return omega_bar_; }

    /// w^2 at radius s.
    double omega2_at(double s) const;
    /// j(r); nondecreasing in r.
    double j_of(double r) const;
    /// The limit of j; finite by construction.
    double j_infinity() const;
    /// Reported tail decay rate: j_inf - j(r) = O(r^{-delta}).
    double decay_rate() const { return delta_; }
    /// Smallest radius with j_inf - j(r) <= eps.
    double effective_radius(double eps) const;

private:
    RotationProfile() = default;

    Kind kind_ = Kind::power_decay;
    double omega_bar_ = 0.0;
    double p_ = 2.0;
    double delta_ = 2.0;
    double j_inf_ = 0.0;
    // tabulated state
    std::vector<double> s_, w2_, cum_;  // cum_[i] = j(s_[i])
};

} // namespace rotstar::rotation
