#include "vlcsec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vlcsec {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;
constexpr double kMiTolerance = 1e-6;

// Overlapping [m - k, m + k] windows around the sorted means, merged, then
// split at every mean so each quadrature piece contains at most one peak.
std::vector<std::pair<double, double>> mixture_support(std::vector<double> means, double k)
{
    std::sort(means.begin(), means.end());
    means.erase(std::unique(means.begin(), means.end()), means.end());

    std::vector<std::pair<double, double>> pieces;
    double lo = means.front() - k;
    double hi = means.front() + k;
    double cursor = lo;
    for (std::size_t i = 0; i < means.size(); ++i) {
        const double m = means[i];
        if (m - k > hi) {
            pieces.emplace_back(cursor, hi);
            lo = m - k;
            cursor = lo;
        }
        hi = m + k;
        if (m > cursor) {
            pieces.emplace_back(cursor, m);
            cursor = m;
        }
    }
    pieces.emplace_back(cursor, hi);
    return pieces;
}

}  // namespace

void GaussianMixture::validate() const
{
    if (means.empty()) throw std::invalid_argument("mixture needs at least one component");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::domain_error("mixture sigma must be positive");
    for (double m : means)
        if (!std::isfinite(m)) throw std::domain_error("mixture means must be finite");
}

void UtilityWeights::validate() const
{
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::domain_error("utility delta must be finite and >= 0");
    if (!(zeta >= 0.0) || !std::isfinite(zeta)) throw std::domain_error("utility zeta must be finite and >= 0");
}

double noise_entropy(double sigma)
{
    if (!(sigma > 0.0)) throw std::domain_error("noise sigma must be positive");
    return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * sigma * sigma);
}

double mixture_entropy(const GaussianMixture& mix, const QuadratureConfig& q)
{
    mix.validate();
    q.validate();

    // Integrate the standardized mixture (unit variance) and shift by log2 sigma.
    std::vector<double> z_means;
    z_means.reserve(mix.means.size());
    for (double m : mix.means) z_means.push_back(m / mix.sigma);

    const double log_norm = -std::log(static_cast<double>(z_means.size())) - 0.5 * std::log(2.0 * std::numbers::pi);
    auto integrand = [&z_means, log_norm](double z) {
        double peak = -std::numeric_limits<double>::infinity();
        for (double m : z_means) peak = std::max(peak, -0.5 * (z - m) * (z - m));
        double acc = 0.0;
        for (double m : z_means) acc += std::exp(-0.5 * (z - m) * (z - m) - peak);
        const double log_p = peak + std::log(acc) + log_norm;
        return -std::exp(log_p) * log_p * kInvLn2;
    };

    const auto pieces = mixture_support(z_means, q.half_width_sigmas);
    const auto r = integrate_adaptive(integrand, pieces, q.rel_tol, 1e-14, q.max_subdivisions);
    return r.value + std::log2(mix.sigma);
}

double mutual_information(const PamConstellation& c, EffectiveGain g, double sigma, const QuadratureConfig& q)
{
    if (!(sigma > 0.0)) throw std::domain_error("noise sigma must be positive");
    if (g.value == 0.0) return 0.0;

    GaussianMixture mix;
    mix.sigma = sigma;
    mix.means.reserve(c.points.size());
    for (double d : c.points) mix.means.push_back(g.value * d);

    const double raw = mixture_entropy(mix, q) - noise_entropy(sigma);
    const double ceiling = std::log2(static_cast<double>(c.order));
    if (raw < -kMiTolerance || raw > ceiling + kMiTolerance)
        throw QuadratureError("mutual information estimate " + std::to_string(raw) + " outside [0, " +
                              std::to_string(ceiling) + "]");
    return std::clamp(raw, 0.0, ceiling);
}

double secrecy_capacity(const PamConstellation& c, EffectiveGain g_bob, double sigma_bob, EffectiveGain g_eve,
                        double sigma_eve, const QuadratureConfig& q)
{
    return mutual_information(c, g_bob, sigma_bob, q) - mutual_information(c, g_eve, sigma_eve, q);
}

double pam_ber(int order, EffectiveGain g, double sigma, double avg_symbol_energy)
{
    if (!(sigma > 0.0)) throw std::domain_error("noise sigma must be positive");
    const int bits = bits_per_symbol(order);
    const long m = order;

    const double snr = (g.value / sigma) * (g.value / sigma) * avg_symbol_energy;
    const double base = std::sqrt(3.0 * snr / (2.0 * static_cast<double>(m * m - 1)));

    double ber = 0.0;
    for (int k = 1; k <= bits; ++k) {
        const long half_k = 1L << (k - 1);
        const long terms = m - (m >> k);  // M (1 - 2^-k)
        for (long i = 0; i < terms; ++i) {
            const long sign = ((i * half_k) / m) % 2 == 0 ? 1 : -1;
            const long weight = half_k - (2 * i * half_k + m) / (2 * m);
            if (weight == 0) continue;
            ber += static_cast<double>(sign * weight) * std::erfc(static_cast<double>(2 * i + 1) * base);
        }
    }
    ber /= static_cast<double>(m * bits);
    return std::clamp(ber, 0.0, 1.0);
}

double utility(double secrecy_capacity, double ber_bob, double ber_eve, const UtilityWeights& w)
{
    return secrecy_capacity - w.delta * ber_bob + w.zeta * ber_eve;
}

}  // namespace vlcsec
