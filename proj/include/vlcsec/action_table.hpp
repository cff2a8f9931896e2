#pragma once

// Per-action metric tables. Channels are static within a scenario, so every
// action's (C_s, BER_B, BER_E, u) can be scored once up front. Actions that
// share (order, |g_bob|, |g_eve|) are scored once.

#include <vector>

#include "vlcsec/experiment.hpp"

namespace vlcsec {

/// OpenMP-parallel over distinct (order, |g_bob|, |g_eve|) keys.
std::vector<MetricRecord> evaluate_action_table(const LinkModel& model, const ActionSpace& space);

/// Reference implementation; results are bit-identical to the parallel one.
std::vector<MetricRecord> evaluate_action_table_serial(const LinkModel& model, const ActionSpace& space);

}  // namespace vlcsec
