#pragma once

// Information-theoretic and error-rate metrics for precoded M-PAM over the
// real AWGN wiretap channel: mutual information by quadrature over the
// received Gaussian mixture, secrecy capacity, Gray-coded BER, and the
// scalar secrecy/quality utility.

#include <vector>

#include "vlcsec/pam.hpp"
#include "vlcsec/quadrature.hpp"

namespace vlcsec {

/// Equal-weight mixture of Gaussians with common standard deviation.
struct GaussianMixture {
    std::vector<double> means;
    double sigma = 1.0;

    void validate() const;
};

struct UtilityWeights {
    double delta = 10.0;  // penalty on Bob's BER
    double zeta = 5.0;    // reward on Eve's BER

    void validate() const;
    friend bool operator==(const UtilityWeights&, const UtilityWeights&) = default;
};

struct MetricRecord {
    double secrecy_capacity = 0.0;  // bits
    double ber_bob = 0.0;
    double ber_eve = 0.0;
    double utility = 0.0;

    friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

/// Differential entropy of N(0, sigma^2) in bits: 0.5 * log2(2 pi e sigma^2).
double noise_entropy(double sigma);

/// -integral p log2 p of the mixture density, in bits.
double mixture_entropy(const GaussianMixture& mix, const QuadratureConfig& q = {});

/// I(d; g d + n) for equiprobable constellation points, in bits, clamped to
/// [0, log2 M]. Throws QuadratureError if the unclamped estimate falls
/// outside that range by more than 1e-6 bits.
double mutual_information(const PamConstellation& c, EffectiveGain g, double sigma,
                          const QuadratureConfig& q = {});

/// I(d; y_bob) - I(d; y_eve). Not clamped at zero.
double secrecy_capacity(const PamConstellation& c, EffectiveGain g_bob, double sigma_bob,
                        EffectiveGain g_eve, double sigma_eve, const QuadratureConfig& q = {});

/// Exact bit error rate of Gray-coded M-PAM with ML detection over AWGN.
///
/// Uses the closed-form double sum for Gray-mapped PAM with erfc argument
/// (2i+1) * sqrt(3 g^2 E_s / (2 sigma^2 (M^2 - 1))). The factor 2 converts the
/// per-dimension noise variance sigma^2 into N0 = 2 sigma^2; without it the
/// sum underestimates the BER (checked against the Monte-Carlo transmission
/// oracle). Depends on g only through |g|. Clamped to [0, 1].
double pam_ber(int order, EffectiveGain g, double sigma, double avg_symbol_energy);

/// u = C_s - delta * ber_bob + zeta * ber_eve
double utility(double secrecy_capacity, double ber_bob, double ber_eve, const UtilityWeights& w);

}  // namespace vlcsec
