#pragma once

// Experiment configuration file: INI-style sections mirroring the system
// parameter table. Units: meters, degrees (full angles for the LED beam and
// PD field of view), watts, W/A, A/W, cm^2, dBm.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlcsec/experiment.hpp"

namespace vlcsec {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, int line = 0);
    int line() const { return line_; }  // 0 when not tied to a line

private:
    int line_;
};

struct SetupPositions {
    std::string name;
    Vec3 bob;
    Vec3 eve;

    friend bool operator==(const SetupPositions&, const SetupPositions&) = default;
};

struct ExperimentConfig {
    // [room]
    Vec3 room_dimensions{10.0, 10.0, 3.0};
    // [luminaires]
    std::vector<Vec3> luminaire_positions;
    // [led]
    double beam_angle_deg = 120.0;
    double transmit_power_w = 5.0;
    double conversion_factor_w_per_a = 0.44;
    double modulation_index = 0.1;
    // [pd]
    double active_area_cm2 = 1.0;
    double responsivity_a_per_w = 0.54;
    double fov_deg = 120.0;
    double filter_gain = 1.0;
    double concentrator_index = 1.5;
    // [noise]
    double average_power_dbm = -98.82;
    std::optional<double> bob_power_dbm;
    std::optional<double> eve_power_dbm;
    double half_width_sigmas = 10.0;
    double rel_tol = 1e-7;
    int max_subdivisions = 20000;
    // [modulation]
    std::vector<int> orders{kSupportedOrders.begin(), kSupportedOrders.end()};
    int quant_levels = 2;
    std::uint64_t max_actions = 1'000'000;
    // [utility]
    UtilityWeights weights;
    bool clamp_secrecy = false;
    // [learner]
    LearnerConfig learner;
    StateBins bins;
    // [run]
    int num_slots = 2000;
    std::uint64_t seed = 1;
    int summary_window = 500;
    std::vector<std::string> baselines{"fixed64"};
    std::vector<double> static_precoder;
    // [setups]
    std::vector<SetupPositions> setups;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ConfigError naming the section, key and line of the first problem.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical form: fixed section and key order, reals printed with 17
/// significant digits. parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& cfg);

/// The built-in defaults (three setups, four ceiling luminaires).
ExperimentConfig default_config();

std::vector<Scenario> build_scenarios(const ExperimentConfig& cfg);

/// Adaptive followed by each configured baseline.
std::vector<RunMode> configured_modes(const ExperimentConfig& cfg);
RunMode parse_mode(const std::string& token, const ExperimentConfig& cfg);

RunConfig make_run_config(const ExperimentConfig& cfg, const RunMode& mode, std::uint64_t seed);

/// 10^((dBm - 30) / 10) watts, returned as a standard deviation.
double sigma_from_dbm(double dbm);

}  // namespace vlcsec
