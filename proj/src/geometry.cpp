#include "vlcsec/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vlcsec {

namespace {

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace

double distance(const Vec3& a, const Vec3& b)
{
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

Luminaire Luminaire::at(const Vec3& position, double semi_angle_deg)
{
    return Luminaire{position, semi_angle_deg, vlcsec::lambertian_order(semi_angle_deg)};
}

void Receiver::validate() const
{
    if (!(active_area_m2 > 0.0)) throw std::domain_error("receiver active area must be positive");
    if (!(fov_deg > 0.0 && fov_deg <= 90.0))
        throw std::domain_error("receiver FoV half-angle must be in (0, 90] degrees, got " +
                                std::to_string(fov_deg));
    if (!(refractive_index >= 1.0)) throw std::domain_error("concentrator refractive index must be >= 1");
    if (!(filter_gain > 0.0)) throw std::domain_error("optical filter gain must be positive");
}

double lambertian_order(double semi_angle_deg)
{
    if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0))
        throw std::domain_error("semi-angle must lie in (0, 90) degrees, got " + std::to_string(semi_angle_deg));
    return -std::numbers::ln2 / std::log(std::cos(deg_to_rad(semi_angle_deg)));
}

double concentrator_gain(double incidence_deg, double kappa, double fov_deg)
{
    if (incidence_deg > fov_deg) return 0.0;
    const double s = std::sin(deg_to_rad(fov_deg));
    return kappa * kappa / (s * s);
}

double los_gain(const Luminaire& lum, const Receiver& rx)
{
    const double dz = lum.position.z - rx.position.z;
    const double d = distance(lum.position, rx.position);
    if (d == 0.0) throw std::domain_error("degenerate geometry: luminaire and receiver coincide");
    if (!(dz > 0.0)) throw std::domain_error("luminaire must be strictly above the receiver plane");

    // Both devices are aligned with the vertical axis, so irradiance and
    // incidence angles coincide.
    const double cos_angle = dz / d;
    const double incidence_deg = rad_to_deg(std::acos(cos_angle));
    const double g = concentrator_gain(incidence_deg, rx.refractive_index, rx.fov_deg);
    if (g == 0.0) return 0.0;

    const double l = lum.lambertian_order;
    const double radiant = (l + 1.0) / (2.0 * std::numbers::pi) * std::pow(cos_angle, l);
    return rx.active_area_m2 / (d * d) * radiant * rx.filter_gain * g * cos_angle;
}

ChannelVector channel_vector(std::span<const Luminaire> lums, const Receiver& rx)
{
    if (lums.empty()) throw std::invalid_argument("at least one luminaire is required");
    ChannelVector h;
    h.gains.reserve(lums.size());
    for (const auto& lum : lums) h.gains.push_back(los_gain(lum, rx));
    return h;
}

}  // namespace vlcsec
