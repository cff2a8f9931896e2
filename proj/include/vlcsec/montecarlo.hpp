#pragma once

// Monte-Carlo validation oracles. Each oracle splits its sample budget into
// fixed-size blocks with independently seeded generators, so the OpenMP and
// serial variants produce bit-identical results for any thread count.

#include <cstdint>

#include "vlcsec/pam.hpp"
#include "vlcsec/secrecy.hpp"

namespace vlcsec {

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

/// Empirical BER of Gray-mapped M-PAM (levels of peak amplitude derived from
/// E_s) with nearest-point detection. `std_error` is the standard error of the
/// per-symbol bit-error fraction, which reduces to the binomial standard error
/// for M = 2. With g = 0 every level is equally likely and detection guesses
/// uniformly. Throws std::invalid_argument if n_symbols < 1e5.
McEstimate mc_ber_oracle(int order, EffectiveGain g, double sigma, double avg_symbol_energy,
                         std::uint64_t n_symbols, std::uint64_t seed);
McEstimate mc_ber_oracle_serial(int order, EffectiveGain g, double sigma, double avg_symbol_energy,
                                std::uint64_t n_symbols, std::uint64_t seed);

/// -E[log2 p(Y)] for Y drawn from the mixture.
McEstimate mc_entropy_oracle(const GaussianMixture& mix, std::uint64_t n_samples, std::uint64_t seed);
McEstimate mc_entropy_oracle_serial(const GaussianMixture& mix, std::uint64_t n_samples, std::uint64_t seed);

/// E[log2 p(Y|d) - log2 p(Y)] with d uniform over the constellation.
McEstimate mc_mutual_information_oracle(const PamConstellation& c, EffectiveGain g, double sigma,
                                        std::uint64_t n_samples, std::uint64_t seed);

inline constexpr std::uint64_t kMcBlockSize = 1u << 16;

}  // namespace vlcsec
