#pragma once

// Independent-oracle checks run by `vlcsec validate`: Monte-Carlo BER,
// entropy and mutual-information estimates against the closed forms and
// quadrature, plus a synthetic bandit convergence check for the learner.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vlcsec/config.hpp"
#include "vlcsec/secrecy.hpp"

namespace vlcsec {

enum class ValidationLevel { fast, full };

ValidationLevel parse_validation_level(const std::string& s);

struct OracleOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

using BerFunction = std::function<double(int, EffectiveGain, double, double)>;

/// Substitutable closed forms, so a deliberately broken formula can be shown
/// to trip the oracles.
struct ValidationHooks {
    BerFunction closed_form_ber = pam_ber;
};

/// Gain g with pam_ber(order, g, sigma = 1, E_s of a unit-peak constellation) == target,
/// found by bisection in log g.
double gain_for_ber(int order, double target);

struct BanditOutcome {
    std::size_t optimal_action = 0;
    double final_optimal_fraction = 0.0;  // slots whose unique greedy choice is optimal
};

/// Single-state Q-learning against fixed per-action utilities. The greedy
/// choice is checked at each of the last `final_window` slots, before that
/// slot's action is drawn.
BanditOutcome run_bandit(const std::vector<double>& utilities, const LearnerConfig& learner, int num_slots,
                         int final_window, std::uint64_t seed);

std::vector<OracleOutcome> run_validation(const ExperimentConfig& cfg, ValidationLevel level,
                                          const ValidationHooks& hooks = {});

}  // namespace vlcsec
