#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vlcsec/quadrature.hpp"

namespace vlcsec {
namespace {

using Pieces = std::vector<std::pair<double, double>>;

TEST(IntegrateAdaptive, PolynomialsAreExact)
{
    const Pieces unit{{0.0, 1.0}};
    const auto r = integrate_adaptive([](double x) { return x * x * x; }, unit, 1e-12, 0.0, 100);
    EXPECT_NEAR(r.value, 0.25, 1e-15);
    EXPECT_EQ(r.subdivisions, 0);
}

TEST(IntegrateAdaptive, GaussianOverWideSupport)
{
    const Pieces support{{-12.0, 0.0}, {0.0, 12.0}};
    const auto r = integrate_adaptive(
        [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }, support,
        1e-10, 0.0, 1000);
    EXPECT_NEAR(r.value, 1.0, 1e-10);
    EXPECT_LE(r.abs_error, 1e-9);
}

TEST(IntegrateAdaptive, SumsDisjointPieces)
{
    const Pieces pieces{{0.0, 1.0}, {2.0, 3.0}};
    const auto r = integrate_adaptive([](double) { return 1.0; }, pieces, 1e-12, 0.0, 10);
    EXPECT_NEAR(r.value, 2.0, 1e-14);
}

TEST(IntegrateAdaptive, SubdivisionBudgetExhaustionThrows)
{
    const Pieces unit{{0.0, 1.0}};
    const auto rough = [](double x) { return std::sin(1.0 / (x + 1e-4)); };
    EXPECT_THROW(integrate_adaptive(rough, unit, 1e-14, 0.0, 3), QuadratureError);
}

TEST(QuadratureConfig, ValidationRejectsNarrowSupportAndBadTolerance)
{
    QuadratureConfig q;
    EXPECT_NO_THROW(q.validate());
    q.half_width_sigmas = 5.0;
    EXPECT_THROW(q.validate(), std::invalid_argument);
    q = {};
    q.rel_tol = 0.0;
    EXPECT_THROW(q.validate(), std::invalid_argument);
    q = {};
    q.max_subdivisions = 0;
    EXPECT_THROW(q.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace vlcsec
