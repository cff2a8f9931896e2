#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "vlcsec/geometry.hpp"

namespace vlcsec {
namespace {

Receiver paper_receiver(const Vec3& at)
{
    return Receiver{at, 1e-4, 60.0, 1.0, 1.5};
}

std::vector<Luminaire> paper_luminaires()
{
    const double r = std::sqrt(5.0);
    return {Luminaire::at({-r, -r, 3.0}, 60.0), Luminaire::at({r, -r, 3.0}, 60.0),
            Luminaire::at({r, r, 3.0}, 60.0), Luminaire::at({-r, r, 3.0}, 60.0)};
}

TEST(LambertianOrder, HalfPowerAnglesWithClosedForms)
{
    EXPECT_NEAR(lambertian_order(60.0), 1.0, 1e-12);
    EXPECT_NEAR(lambertian_order(45.0), 2.0, 1e-12);
    // mpmath, 30 digits: -ln 2 / ln cos 30deg
    EXPECT_NEAR(lambertian_order(30.0), 4.81884167930641800916, 1e-12);
}

TEST(LambertianOrder, RejectsAnglesOutsideOpenInterval)
{
    EXPECT_THROW(lambertian_order(0.0), std::domain_error);
    EXPECT_THROW(lambertian_order(90.0), std::domain_error);
    EXPECT_THROW(lambertian_order(-10.0), std::domain_error);
    EXPECT_THROW(lambertian_order(120.0), std::domain_error);
}

TEST(ConcentratorGain, InsideAndOutsideFieldOfView)
{
    EXPECT_EQ(concentrator_gain(70.0, 1.5, 60.0), 0.0);
    EXPECT_NEAR(concentrator_gain(0.0, 1.5, 60.0), 3.0, 1e-12);
    EXPECT_NEAR(concentrator_gain(30.0, 1.5, 90.0), 2.25, 1e-12);
    EXPECT_NEAR(concentrator_gain(60.0, 1.5, 60.0), 3.0, 1e-12);  // boundary is inside
}

TEST(LosGain, DirectlyOverheadReducesToSubstitution)
{
    const double d = 2.5;
    const Luminaire lum = Luminaire::at({0.0, 0.0, 3.0}, 60.0);
    const Receiver rx = paper_receiver({0.0, 0.0, 3.0 - d});
    const double expected = (1e-4 / (d * d)) * (1.0 / std::numbers::pi) * 3.0;
    EXPECT_NEAR(los_gain(lum, rx), expected, 1e-18);
}

TEST(LosGain, TableGeometryMatchesScriptOracle)
{
    const double r = std::sqrt(5.0);
    const Luminaire lum = Luminaire::at({r, r, 3.0}, 60.0);
    // mpmath evaluation of the Lambertian LoS expression term by term.
    EXPECT_NEAR(los_gain(lum, paper_receiver({0.0, 0.0, 0.5})), 2.26018854094999293e-06, 1e-19);
}

TEST(LosGain, ZeroOutsideFieldOfView)
{
    const Luminaire lum = Luminaire::at({0.0, 0.0, 3.0}, 60.0);
    // 5 m sideways at 2.5 m drop: incidence ~63.4 deg > 60 deg
    EXPECT_EQ(los_gain(lum, paper_receiver({5.0, 0.0, 0.5})), 0.0);
}

TEST(LosGain, DegenerateGeometryThrows)
{
    const Luminaire lum = Luminaire::at({1.0, 1.0, 3.0}, 60.0);
    EXPECT_THROW(los_gain(lum, paper_receiver({1.0, 1.0, 3.0})), std::domain_error);
    EXPECT_THROW(los_gain(lum, paper_receiver({0.0, 0.0, 3.5})), std::domain_error);
}

TEST(ChannelVector, CenterOfSymmetricLayoutSeesIdenticalGains)
{
    const auto lums = paper_luminaires();
    const ChannelVector h = channel_vector(lums, paper_receiver({0.0, 0.0, 0.5}));
    ASSERT_EQ(h.size(), 4u);
    for (double g : h.gains) EXPECT_DOUBLE_EQ(g, h[0]);
    EXPECT_NEAR(h[0], 2.26018854094999293e-06, 1e-19);
}

TEST(ChannelVector, PreservesOrderAndMatchesPerLuminaireGain)
{
    const auto lums = paper_luminaires();
    const Receiver eve = paper_receiver({1.0, 0.0, 0.5});
    const ChannelVector h = channel_vector(lums, eve);
    for (std::size_t n = 0; n < lums.size(); ++n) EXPECT_EQ(h[n], los_gain(lums[n], eve));

    const std::vector<Luminaire> one{lums[2]};
    EXPECT_EQ(channel_vector(one, eve).gains, std::vector<double>{los_gain(lums[2], eve)});
    EXPECT_THROW(channel_vector(std::span<const Luminaire>{}, eve), std::invalid_argument);
}

TEST(ChannelProperties, GainStrictlyDecreasesWithHeightBelowLuminaire)
{
    const Luminaire lum = Luminaire::at({0.0, 0.0, 3.0}, 60.0);
    double previous = std::numeric_limits<double>::infinity();
    for (double z = 2.9; z >= 0.0; z -= 0.1) {
        const double h = los_gain(lum, paper_receiver({0.0, 0.0, z}));
        EXPECT_LT(h, previous);
        previous = h;
    }
}

TEST(ChannelProperties, FovCutoffIsExactAndGainNonnegative)
{
    const Luminaire lum = Luminaire::at({0.0, 0.0, 3.0}, 60.0);
    const double drop = 2.5;
    const double edge = drop * std::tan(60.0 * std::numbers::pi / 180.0);
    for (double x = 0.0; x < 2.0 * edge; x += edge / 50.0) {
        const double h = los_gain(lum, paper_receiver({x, 0.0, 3.0 - drop}));
        EXPECT_GE(h, 0.0);
        const double incidence = std::atan2(x, drop) * 180.0 / std::numbers::pi;
        if (incidence > 60.0 + 1e-9) EXPECT_EQ(h, 0.0) << "x=" << x;
        if (incidence < 60.0 - 1e-9) EXPECT_GT(h, 0.0) << "x=" << x;
    }
}

TEST(ChannelProperties, LayoutSymmetryPermutesChannelVectors)
{
    const auto lums = paper_luminaires();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double x = pos(rng);
        const double y = pos(rng);
        const ChannelVector h = channel_vector(lums, paper_receiver({x, y, 0.5}));
        // Mirror across the x axis swaps luminaires 0<->3 and 1<->2.
        const ChannelVector m = channel_vector(lums, paper_receiver({x, -y, 0.5}));
        EXPECT_NEAR(h[0], m[3], 1e-20);
        EXPECT_NEAR(h[1], m[2], 1e-20);
        // Rotation by 90 degrees: (x, y) -> (-y, x) maps luminaire n to n+1.
        const ChannelVector r = channel_vector(lums, paper_receiver({-y, x, 0.5}));
        for (std::size_t n = 0; n < 4; ++n) EXPECT_NEAR(h[n], r[(n + 1) % 4], 1e-20);
    }
}

}  // namespace
}  // namespace vlcsec
