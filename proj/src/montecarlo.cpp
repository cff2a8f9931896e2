#include "vlcsec/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace vlcsec {

namespace {

struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t count = 0;
};

std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t block_count(std::uint64_t n) { return (n + kMcBlockSize - 1) / kMcBlockSize; }

std::uint64_t block_length(std::uint64_t n, std::uint64_t b)
{
    return std::min(kMcBlockSize, n - b * kMcBlockSize);
}

McEstimate reduce(const std::vector<BlockSums>& blocks)
{
    BlockSums total;
    for (const auto& b : blocks) {
        total.sum += b.sum;
        total.sum_sq += b.sum_sq;
        total.count += b.count;
    }
    McEstimate e;
    e.samples = total.count;
    const double n = static_cast<double>(total.count);
    e.estimate = total.sum / n;
    const double var = std::max(0.0, total.sum_sq / n - e.estimate * e.estimate);
    e.std_error = std::sqrt(var / n);
    return e;
}

// Log-density of the standardized mixture with unit variance.
double log_mixture_density(double z, const std::vector<double>& z_means)
{
    double peak = -std::numeric_limits<double>::infinity();
    for (double m : z_means) peak = std::max(peak, -0.5 * (z - m) * (z - m));
    double acc = 0.0;
    for (double m : z_means) acc += std::exp(-0.5 * (z - m) * (z - m) - peak);
    return peak + std::log(acc) - std::log(static_cast<double>(z_means.size())) -
           0.5 * std::log(2.0 * std::numbers::pi);
}

struct BerKernel {
    int order;
    int bits;
    double gain;
    double sigma;
    double amplitude;

    BlockSums operator()(std::uint64_t seed, std::uint64_t block, std::uint64_t len) const
    {
        auto rng = block_engine(seed, block);
        std::uniform_int_distribution<int> pick(0, order - 1);
        std::normal_distribution<double> noise(0.0, 1.0);
        const double m1 = order - 1;
        BlockSums s;
        for (std::uint64_t t = 0; t < len; ++t) {
            const int sent = pick(rng);
            const double level = amplitude * (2.0 * sent - m1) / m1;
            const double y = gain * level + sigma * noise(rng);
            int detected;
            if (gain == 0.0) {
                detected = pick(rng);
            } else {
                const double r = y / gain;  // undo polarity and scale
                const double idx = std::round((r * m1 / amplitude + m1) / 2.0);
                detected = static_cast<int>(std::clamp(idx, 0.0, m1));
            }
            const auto gray_sent = static_cast<unsigned>(sent ^ (sent >> 1));
            const auto gray_detected = static_cast<unsigned>(detected ^ (detected >> 1));
            const double frac = static_cast<double>(std::popcount(gray_sent ^ gray_detected)) / bits;
            s.sum += frac;
            s.sum_sq += frac * frac;
        }
        s.count = len;
        return s;
    }
};

BerKernel make_ber_kernel(int order, EffectiveGain g, double sigma, double avg_symbol_energy,
                          std::uint64_t n_symbols)
{
    if (n_symbols < 100000) throw std::invalid_argument("BER oracle needs at least 1e5 symbols");
    if (!(sigma > 0.0)) throw std::domain_error("noise sigma must be positive");
    if (!(avg_symbol_energy > 0.0)) throw std::domain_error("symbol energy must be positive");
    const int bits = bits_per_symbol(order);
    // Invert E_s = A^2 (M+1) / (3 (M-1)) for the peak amplitude.
    const double amplitude = std::sqrt(avg_symbol_energy * 3.0 * (order - 1) / (order + 1));
    return BerKernel{order, bits, g.value, sigma, amplitude};
}

struct EntropyKernel {
    std::vector<double> z_means;

    BlockSums operator()(std::uint64_t seed, std::uint64_t block, std::uint64_t len) const
    {
        auto rng = block_engine(seed, block);
        std::uniform_int_distribution<std::size_t> pick(0, z_means.size() - 1);
        std::normal_distribution<double> noise(0.0, 1.0);
        BlockSums s;
        for (std::uint64_t t = 0; t < len; ++t) {
            const double z = z_means[pick(rng)] + noise(rng);
            const double v = -log_mixture_density(z, z_means) / std::numbers::ln2;
            s.sum += v;
            s.sum_sq += v * v;
        }
        s.count = len;
        return s;
    }
};

struct MutualInfoKernel {
    std::vector<double> z_means;

    BlockSums operator()(std::uint64_t seed, std::uint64_t block, std::uint64_t len) const
    {
        auto rng = block_engine(seed, block);
        std::uniform_int_distribution<std::size_t> pick(0, z_means.size() - 1);
        std::normal_distribution<double> noise(0.0, 1.0);
        const double log_cond_norm = -0.5 * std::log(2.0 * std::numbers::pi);
        BlockSums s;
        for (std::uint64_t t = 0; t < len; ++t) {
            const double n = noise(rng);
            const double z = z_means[pick(rng)] + n;
            const double v = (log_cond_norm - 0.5 * n * n - log_mixture_density(z, z_means)) / std::numbers::ln2;
            s.sum += v;
            s.sum_sq += v * v;
        }
        s.count = len;
        return s;
    }
};

template <class Kernel>
McEstimate run_parallel(const Kernel& kernel, std::uint64_t n, std::uint64_t seed)
{
    const auto nb = static_cast<std::int64_t>(block_count(n));
    std::vector<BlockSums> blocks(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        blocks[static_cast<std::size_t>(b)] = kernel(seed, ub, block_length(n, ub));
    }
    return reduce(blocks);
}

template <class Kernel>
McEstimate run_serial(const Kernel& kernel, std::uint64_t n, std::uint64_t seed)
{
    std::vector<BlockSums> blocks;
    for (std::uint64_t b = 0; b < block_count(n); ++b) blocks.push_back(kernel(seed, b, block_length(n, b)));
    return reduce(blocks);
}

EntropyKernel make_entropy_kernel(const GaussianMixture& mix, std::uint64_t n)
{
    mix.validate();
    if (n == 0) throw std::invalid_argument("entropy oracle needs samples");
    EntropyKernel k;
    for (double m : mix.means) k.z_means.push_back(m / mix.sigma);
    return k;
}

}  // namespace

McEstimate mc_ber_oracle(int order, EffectiveGain g, double sigma, double avg_symbol_energy,
                         std::uint64_t n_symbols, std::uint64_t seed)
{
    return run_parallel(make_ber_kernel(order, g, sigma, avg_symbol_energy, n_symbols), n_symbols, seed);
}

McEstimate mc_ber_oracle_serial(int order, EffectiveGain g, double sigma, double avg_symbol_energy,
                                std::uint64_t n_symbols, std::uint64_t seed)
{
    return run_serial(make_ber_kernel(order, g, sigma, avg_symbol_energy, n_symbols), n_symbols, seed);
}

McEstimate mc_entropy_oracle(const GaussianMixture& mix, std::uint64_t n_samples, std::uint64_t seed)
{
    auto e = run_parallel(make_entropy_kernel(mix, n_samples), n_samples, seed);
    e.estimate += std::log2(mix.sigma);
    return e;
}

McEstimate mc_entropy_oracle_serial(const GaussianMixture& mix, std::uint64_t n_samples, std::uint64_t seed)
{
    auto e = run_serial(make_entropy_kernel(mix, n_samples), n_samples, seed);
    e.estimate += std::log2(mix.sigma);
    return e;
}

McEstimate mc_mutual_information_oracle(const PamConstellation& c, EffectiveGain g, double sigma,
                                        std::uint64_t n_samples, std::uint64_t seed)
{
    if (!(sigma > 0.0)) throw std::domain_error("noise sigma must be positive");
    if (n_samples == 0) throw std::invalid_argument("MI oracle needs samples");
    MutualInfoKernel k;
    for (double d : c.points) k.z_means.push_back(g.value * d / sigma);
    return run_parallel(k, n_samples, seed);
}

}  // namespace vlcsec
