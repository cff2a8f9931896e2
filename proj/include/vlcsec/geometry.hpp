#pragma once

// Line-of-sight optical channel gains for ceiling-mounted LED luminaires and
// upward-facing single-photodiode receivers (Lambertian emission model).

#include <cstddef>
#include <span>
#include <vector>

namespace vlcsec {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(const Vec3& a, const Vec3& b);

/// Emitter. Faces straight down.
struct Luminaire {
    Vec3 position;
    double semi_angle_deg = 60.0;   // half-power semi-angle
    double lambertian_order = 1.0;  // derived from semi_angle_deg

    static Luminaire at(const Vec3& position, double semi_angle_deg);

    friend bool operator==(const Luminaire&, const Luminaire&) = default;
};

/// Photodiode receiver. Faces straight up. `fov_deg` is the half-angle.
struct Receiver {
    Vec3 position;
    double active_area_m2 = 1e-4;
    double fov_deg = 60.0;
    double filter_gain = 1.0;
    double refractive_index = 1.5;

    void validate() const;

    friend bool operator==(const Receiver&, const Receiver&) = default;
};

/// Per-luminaire LoS gains seen by one receiver, in luminaire order.
struct ChannelVector {
    std::vector<double> gains;

    std::size_t size() const { return gains.size(); }
    double operator[](std::size_t n) const { return gains[n]; }

    friend bool operator==(const ChannelVector&, const ChannelVector&) = default;
};

/// l = -ln 2 / ln cos(semi_angle). Throws std::domain_error unless 0 < semi_angle < 90.
double lambertian_order(double semi_angle_deg);

/// Concentrator gain kappa^2 / sin^2(fov) inside the field of view, 0 outside.
double concentrator_gain(double incidence_deg, double kappa, double fov_deg);

/// LoS DC gain between one luminaire and one receiver. Zero outside the FoV.
/// Throws std::domain_error when the luminaire is not above the receiver
/// (which includes the coincident case d = 0).
double los_gain(const Luminaire& lum, const Receiver& rx);

ChannelVector channel_vector(std::span<const Luminaire> lums, const Receiver& rx);

}  // namespace vlcsec
