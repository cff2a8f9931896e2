#pragma once

// Amplitude-constrained M-PAM over a precoded multi-LED transmitter.

#include <array>
#include <span>
#include <vector>

#include "vlcsec/geometry.hpp"

namespace vlcsec {

inline constexpr std::array<int, 6> kSupportedOrders{2, 4, 8, 16, 32, 64};

bool is_supported_order(int order);
int bits_per_symbol(int order);  // log2(order)

struct DriveParams {
    double dc_bias = 5.0 / 0.44;  // I_DC [A]
    double modulation_index = 0.1;
    double led_conversion = 0.44;  // [W/A]
    double pd_responsivity = 0.54;  // [A/W]

    double peak_amplitude() const { return modulation_index * dc_bias; }
    void validate() const;

    friend bool operator==(const DriveParams&, const DriveParams&) = default;
};

/// M symmetric, equally spaced levels with peak `amplitude`.
struct PamConstellation {
    int order = 2;
    double amplitude = 1.0;
    std::vector<double> points;
    double avg_symbol_energy = 1.0;
};

struct Precoder {
    std::vector<double> weights;

    double inf_norm() const;
    friend bool operator==(const Precoder&, const Precoder&) = default;
};

/// Scalar gain gamma * eta * h^T w applied to the symbol after DC removal.
/// May be negative or zero.
struct EffectiveGain {
    double value = 0.0;
};

/// Throws std::invalid_argument for unsupported orders or a non-positive peak.
PamConstellation build_constellation(int order, const DriveParams& params);
PamConstellation build_constellation(int order, double amplitude);

/// Throws std::invalid_argument on dimension mismatch.
EffectiveGain effective_gain(const ChannelVector& h, const Precoder& w, const DriveParams& params);

/// Per-LED drive currents w_n * symbol + I_DC. Throws std::out_of_range if the
/// symbol or the precoder would leave the LED linear range.
std::vector<double> drive_currents(const Precoder& w, double symbol, const DriveParams& params);

}  // namespace vlcsec
