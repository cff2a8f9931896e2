#include "vlcsec/pam.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vlcsec {

bool is_supported_order(int order)
{
    return std::find(kSupportedOrders.begin(), kSupportedOrders.end(), order) != kSupportedOrders.end();
}

int bits_per_symbol(int order)
{
    if (!is_supported_order(order)) throw std::invalid_argument("unsupported PAM order " + std::to_string(order));
    return std::countr_zero(static_cast<unsigned>(order));
}

void DriveParams::validate() const
{
    if (!(dc_bias > 0.0)) throw std::domain_error("DC bias must be positive");
    if (!(modulation_index >= 0.0 && modulation_index <= 1.0))
        throw std::domain_error("modulation index must lie in [0, 1]");
    if (!(led_conversion > 0.0)) throw std::domain_error("LED conversion factor must be positive");
    if (!(pd_responsivity > 0.0)) throw std::domain_error("PD responsivity must be positive");
}

double Precoder::inf_norm() const
{
    double m = 0.0;
    for (double w : weights) m = std::max(m, std::abs(w));
    return m;
}

PamConstellation build_constellation(int order, double amplitude)
{
    if (!is_supported_order(order)) throw std::invalid_argument("unsupported PAM order " + std::to_string(order));
    if (!(amplitude > 0.0)) throw std::invalid_argument("PAM peak amplitude must be positive");

    PamConstellation c;
    c.order = order;
    c.amplitude = amplitude;
    c.points.resize(static_cast<std::size_t>(order));
    const double m1 = order - 1;
    for (int i = 0; i < order; ++i) c.points[static_cast<std::size_t>(i)] = amplitude * (2.0 * i - m1) / m1;
    c.avg_symbol_energy = amplitude * amplitude * (order + 1) / (3.0 * m1);
    return c;
}

PamConstellation build_constellation(int order, const DriveParams& params)
{
    return build_constellation(order, params.peak_amplitude());
}

EffectiveGain effective_gain(const ChannelVector& h, const Precoder& w, const DriveParams& params)
{
    if (h.size() != w.weights.size())
        throw std::invalid_argument("channel has " + std::to_string(h.size()) + " entries but precoder has " +
                                    std::to_string(w.weights.size()));
    double dot = 0.0;
    for (std::size_t n = 0; n < h.size(); ++n) dot += h.gains[n] * w.weights[n];
    return EffectiveGain{params.pd_responsivity * params.led_conversion * dot};
}

std::vector<double> drive_currents(const Precoder& w, double symbol, const DriveParams& params)
{
    if (w.inf_norm() > 1.0) throw std::out_of_range("precoder infinity norm exceeds 1");
    if (std::abs(symbol) > params.peak_amplitude())
        throw std::out_of_range("symbol magnitude exceeds alpha * I_DC");
    std::vector<double> x;
    x.reserve(w.weights.size());
    for (double wn : w.weights) x.push_back(wn * symbol + params.dc_bias);
    return x;
}

}  // namespace vlcsec
