#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "vlcsec/montecarlo.hpp"
#include "vlcsec/secrecy.hpp"

namespace vlcsec {
namespace {

TEST(NoiseEntropy, UnitVarianceAndScaling)
{
    // mpmath: 0.5 * log2(2 pi e)
    EXPECT_NEAR(noise_entropy(1.0), 2.04709558518064110, 1e-14);
    EXPECT_NEAR(noise_entropy(4.0) - noise_entropy(1.0), 2.0, 1e-14);
    EXPECT_THROW(noise_entropy(0.0), std::domain_error);
}

TEST(MixtureEntropy, SingleComponentEqualsNoiseEntropy)
{
    for (double sigma : {1e-7, 0.3, 1.0, 42.0}) {
        const GaussianMixture mix{{3.0 * sigma}, sigma};
        EXPECT_NEAR(mixture_entropy(mix), noise_entropy(sigma), 1e-8) << sigma;
    }
}

TEST(MixtureEntropy, FourPamMatchesScriptOracle)
{
    const GaussianMixture mix{{-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0}, 0.2};
    // mpmath adaptive quadrature of -p log2 p
    EXPECT_NEAR(mixture_entropy(mix), 1.46115372602260237, 1e-6);
}

TEST(MixtureEntropy, InvalidMixturesThrow)
{
    EXPECT_THROW(mixture_entropy(GaussianMixture{{}, 1.0}), std::invalid_argument);
    EXPECT_THROW(mixture_entropy(GaussianMixture{{0.0}, 0.0}), std::domain_error);
    EXPECT_THROW(mixture_entropy(GaussianMixture{{std::nan("")}, 1.0}), std::domain_error);
}

TEST(MixtureEntropy, NeverBelowNoiseEntropy)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    std::uniform_real_distribution<double> spread(0.05, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        GaussianMixture mix;
        mix.sigma = spread(rng);
        const int count = 1 + trial % 7;
        for (int i = 0; i < count; ++i) mix.means.push_back(pos(rng));
        EXPECT_GE(mixture_entropy(mix), noise_entropy(mix.sigma) - 1e-6);
        EXPECT_LE(mixture_entropy(mix), noise_entropy(mix.sigma) + std::log2(count) + 1e-6);
    }
}

TEST(MutualInformation, BinaryAtUnitSnrMatchesScriptOracle)
{
    const auto c = build_constellation(2, 1.0);
    EXPECT_NEAR(mutual_information(c, EffectiveGain{1.0}, 1.0), 0.485944154132935320, 1e-6);
}

TEST(MutualInformation, FourPamMatchesScriptOracle)
{
    const auto c = build_constellation(4, 1.0);
    EXPECT_NEAR(mutual_information(c, EffectiveGain{1.0}, 0.2), 1.73598623572932362, 1e-6);
}

TEST(MutualInformation, LimitsAtZeroAndHighSnr)
{
    for (int m : kSupportedOrders) {
        const auto c = build_constellation(m, 1.0);
        EXPECT_EQ(mutual_information(c, EffectiveGain{0.0}, 1.0), 0.0) << m;
        EXPECT_LE(mutual_information(c, EffectiveGain{1e-6}, 1.0), 1e-6) << m;
        const double spacing = 2.0 / (m - 1);
        EXPECT_NEAR(mutual_information(c, EffectiveGain{1.0}, spacing / 40.0), std::log2(m), 1e-6) << m;
    }
}

TEST(MutualInformation, EvenAndMonotoneInGain)
{
    for (int m : {2, 8, 64}) {
        const auto c = build_constellation(m, 1.0);
        double previous = -1.0;
        for (double g = 0.0; g <= 3.0; g += 0.15) {
            const double mi = mutual_information(c, EffectiveGain{g}, 0.5);
            EXPECT_NEAR(mi, mutual_information(c, EffectiveGain{-g}, 0.5), 1e-9);
            EXPECT_GE(mi, previous - 1e-7) << "M=" << m << " g=" << g;
            previous = mi;
        }
    }
}

TEST(MutualInformation, AgreesWithMonteCarloOracle)
{
    const auto c = build_constellation(8, 1.0);
    const double sigma = 0.15;
    const auto mc = mc_mutual_information_oracle(c, EffectiveGain{1.0}, sigma, 1u << 20, 23);
    const double q = mutual_information(c, EffectiveGain{1.0}, sigma);
    EXPECT_LE(std::abs(q - mc.estimate), 4.0 * mc.std_error + 1e-6);
}

TEST(SecrecyCapacity, AntisymmetricAndZeroOnEqualChannels)
{
    const auto c = build_constellation(16, 1.0);
    const EffectiveGain gb{0.8};
    const EffectiveGain ge{0.3};
    EXPECT_EQ(secrecy_capacity(c, gb, 0.1, gb, 0.1), 0.0);
    const double fwd = secrecy_capacity(c, gb, 0.1, ge, 0.1);
    const double rev = secrecy_capacity(c, ge, 0.1, gb, 0.1);
    EXPECT_GT(fwd, 0.0);
    EXPECT_DOUBLE_EQ(fwd, -rev);
    EXPECT_NEAR(secrecy_capacity(c, EffectiveGain{0.0}, 0.1, ge, 0.1),
                -mutual_information(c, ge, 0.1), 1e-15);
}

double exact_gray_ber(int order, double amplitude, double g, double sigma)
{
    // Direct enumeration of decision regions, independent of the closed form.
    const auto c = build_constellation(order, amplitude);
    const int bits = std::countr_zero(static_cast<unsigned>(order));
    const auto cdf = [&](double x, double mean) { return 0.5 * std::erfc(-(x - mean) / (sigma * std::sqrt(2.0))); };
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        const double mean = g * c.points[static_cast<std::size_t>(i)];
        for (int j = 0; j < order; ++j) {
            const double lo = j == 0 ? -std::numeric_limits<double>::infinity()
                                     : g * 0.5 * (c.points[static_cast<std::size_t>(j - 1)] + c.points[static_cast<std::size_t>(j)]);
            const double hi = j == order - 1 ? std::numeric_limits<double>::infinity()
                                             : g * 0.5 * (c.points[static_cast<std::size_t>(j)] + c.points[static_cast<std::size_t>(j + 1)]);
            const unsigned diff = static_cast<unsigned>((i ^ (i >> 1)) ^ (j ^ (j >> 1)));
            total += (cdf(hi, mean) - cdf(lo, mean)) * std::popcount(diff);
        }
    }
    return total / (order * bits);
}

TEST(PamBer, ScriptOracleValues)
{
    // mpmath enumeration of Gray decision regions
    EXPECT_NEAR(pam_ber(2, EffectiveGain{1.0}, 1.0, 1.0), 0.158655253931457051, 1e-14);
    EXPECT_NEAR(pam_ber(4, EffectiveGain{1.0}, 0.2, 5.0 / 9.0), 0.0358429075303969607, 1e-13);
    const auto c8 = build_constellation(8, 1.0);
    EXPECT_NEAR(pam_ber(8, EffectiveGain{0.5}, 0.05, c8.avg_symbol_energy), 0.0446667270383194339, 1e-13);
    const auto c16 = build_constellation(16, 2.0);
    EXPECT_NEAR(pam_ber(16, EffectiveGain{1.0}, 0.1, c16.avg_symbol_energy), 0.0427691154143936813, 1e-13);
}

TEST(PamBer, MatchesRegionEnumerationAcrossOrders)
{
    for (int m : kSupportedOrders) {
        const auto c = build_constellation(m, 1.0);
        for (double sigma : {0.002, 0.01, 0.05, 0.3}) {
            const double ref = exact_gray_ber(m, 1.0, 1.0, sigma);
            EXPECT_NEAR(pam_ber(m, EffectiveGain{1.0}, sigma, c.avg_symbol_energy), ref, 1e-12 + 1e-9 * ref)
                << "M=" << m << " sigma=" << sigma;
        }
    }
}

TEST(PamBer, BoundsEvenMonotoneAndOrdered)
{
    for (int m : kSupportedOrders) {
        const auto c = build_constellation(m, 1.0);
        EXPECT_NEAR(pam_ber(m, EffectiveGain{0.0}, 1.0, c.avg_symbol_energy), 0.5, 1e-15) << m;
        double previous = 1.0;
        for (double g = 0.0; g <= 50.0; g += 0.5) {
            const double b = pam_ber(m, EffectiveGain{g}, 1.0, c.avg_symbol_energy);
            EXPECT_GE(b, 0.0);
            EXPECT_LE(b, 0.5 + 1e-15);
            EXPECT_EQ(b, pam_ber(m, EffectiveGain{-g}, 1.0, c.avg_symbol_energy));
            EXPECT_LE(b, previous + 1e-15);
            previous = b;
        }
    }
    // Same per-symbol energy: denser constellations never do better.
    for (double g : {0.5, 1.0, 2.0, 4.0}) {
        double previous = 0.0;
        for (int m : kSupportedOrders) {
            const double b = pam_ber(m, EffectiveGain{g}, 1.0, 1.0);
            EXPECT_GE(b, previous - 1e-15) << "M=" << m << " g=" << g;
            previous = b;
        }
    }
}

TEST(PamBer, InvalidArgumentsThrow)
{
    EXPECT_THROW(pam_ber(3, EffectiveGain{1.0}, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(pam_ber(4, EffectiveGain{1.0}, 0.0, 1.0), std::domain_error);
}

// The textbook expression with erfc argument sqrt(3 g^2 Es / (sigma^2 (M^2-1)))
// treats sigma^2 as N0, which equals the corrected form at sigma / sqrt(2).
// Against simulated transmissions it is far outside the statistical error.
double ber_with_sigma_as_n0(int order, double g, double sigma, double es)
{
    return pam_ber(order, EffectiveGain{g}, sigma / std::sqrt(2.0), es);
}

TEST(PamBer, SigmaAsN0VariantDisagreesWithSimulation)
{
    const int m = 4;
    const auto c = build_constellation(m, 1.0);
    const double sigma = 0.2;
    const auto mc = mc_ber_oracle(m, EffectiveGain{1.0}, sigma, c.avg_symbol_energy, 1'000'000, 99);
    const double corrected = pam_ber(m, EffectiveGain{1.0}, sigma, c.avg_symbol_energy);
    const double printed = ber_with_sigma_as_n0(m, 1.0, sigma, c.avg_symbol_energy);
    EXPECT_LE(std::abs(corrected - mc.estimate), 3.0 * mc.std_error);
    EXPECT_GT(std::abs(printed - mc.estimate), 20.0 * mc.std_error);
}

TEST(Utility, WeightedCombination)
{
    EXPECT_DOUBLE_EQ(utility(1.5, 0.01, 0.3, UtilityWeights{}), 1.5 - 0.1 + 1.5);
    EXPECT_DOUBLE_EQ(utility(0.0, 0.5, 0.5, UtilityWeights{0.0, 0.0}), 0.0);
    EXPECT_THROW(UtilityWeights({-1.0, 5.0}).validate(), std::domain_error);
}

}  // namespace
}  // namespace vlcsec
