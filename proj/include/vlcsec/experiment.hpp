#pragma once

// Episode orchestration: scenario setup, the per-slot Q-learning loop,
// baselines, and window summaries.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlcsec/geometry.hpp"
#include "vlcsec/pam.hpp"
#include "vlcsec/qlearn.hpp"
#include "vlcsec/quadrature.hpp"
#include "vlcsec/secrecy.hpp"

namespace vlcsec {

struct Scenario {
    std::string name;
    std::vector<Luminaire> luminaires;
    DriveParams drive;
    Receiver bob;
    double sigma_bob = 1.0;
    Receiver eve;
    double sigma_eve = 1.0;

    void validate() const;
};

/// Everything needed to score one (order, precoder) pair on a fixed scenario.
struct LinkModel {
    ChannelVector h_bob;
    ChannelVector h_eve;
    DriveParams drive;
    double sigma_bob = 1.0;
    double sigma_eve = 1.0;
    QuadratureConfig quadrature;
    UtilityWeights weights;
    bool clamp_secrecy = false;

    static LinkModel from(const Scenario& sc, const QuadratureConfig& q, const UtilityWeights& w,
                          bool clamp_secrecy);

    MetricRecord evaluate(int order, const Precoder& w) const;
};

struct RunMode {
    enum class Kind { adaptive, fixed_order, fixed_both };

    Kind kind = Kind::adaptive;
    int order = 0;       // fixed_order / fixed_both
    Precoder precoder;   // fixed_both

    static RunMode adaptive() { return {}; }
    static RunMode fixed_order(int order) { return RunMode{Kind::fixed_order, order, {}}; }
    static RunMode fixed_both(int order, Precoder w) { return RunMode{Kind::fixed_both, order, std::move(w)}; }

    /// Directory-safe name: "adaptive", "fixed<M>", "static<M>".
    std::string label() const;

    friend bool operator==(const RunMode&, const RunMode&) = default;
};

struct RunConfig {
    int num_slots = 2000;
    std::uint64_t seed = 1;
    UtilityWeights weights;
    LearnerConfig learner;
    RunMode mode;
    int summary_window = 500;

    std::vector<int> orders{kSupportedOrders.begin(), kSupportedOrders.end()};
    int quant_levels = 2;
    std::size_t max_actions = 1'000'000;
    StateBins bins;
    QuadratureConfig quadrature;
    bool clamp_secrecy = false;

    void validate() const;
};

ActionSpace make_action_space(const RunConfig& cfg, int num_leds);

struct TimeSlotLog {
    int slot = 0;
    std::size_t action_index = 0;
    int order = 0;
    std::vector<double> weights;
    double secrecy_capacity = 0.0;
    double ber_bob = 0.0;
    double ber_eve = 0.0;
    double utility = 0.0;
    double epsilon = 0.0;
    bool greedy = false;
    std::optional<StateKey> state;  // empty for the priming slot

    friend bool operator==(const TimeSlotLog&, const TimeSlotLog&) = default;
};

/// Metrics for a dense action index.
using ActionEvaluator = std::function<MetricRecord(std::size_t)>;

struct EpisodeResult {
    std::vector<TimeSlotLog> logs;
    QTable q;
};

class EpisodeError : public std::runtime_error {
public:
    EpisodeError(int slot, const std::string& what);
    int slot() const { return slot_; }

private:
    int slot_;
};

/// The learning loop. Slot 0 applies a uniformly drawn initial action and
/// primes the state; every later slot k forms its state from slot k-1's
/// metrics, picks an action epsilon-greedily with epsilon_at(k), scores it,
/// and performs one Bellman update towards the state formed from its own
/// metrics. Deterministic in cfg.seed.
EpisodeResult run_episode(const ActionSpace& space, const ActionEvaluator& evaluate, const ChannelVector& h_bob,
                          const ChannelVector& h_eve, const RunConfig& cfg);

/// Scenario with its action space and precomputed per-action metrics.
struct PreparedScenario {
    Scenario scenario;
    RunMode mode;
    LinkModel model;
    ActionSpace space;
    std::vector<MetricRecord> table;
};

PreparedScenario prepare(const Scenario& sc, const RunConfig& cfg);

EpisodeResult run_episode(const PreparedScenario& prepared, const RunConfig& cfg);
EpisodeResult run_episode(const Scenario& sc, const RunConfig& cfg);

/// run_episode restricted to M = 64 unless cfg already pins a fixed mode.
EpisodeResult run_baseline(const Scenario& sc, RunConfig cfg);

struct Stat {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct Summary {
    int window = 0;
    Stat secrecy_capacity;
    Stat ber_bob;
    Stat ber_eve;
    Stat utility;
    std::size_t modal_action = 0;
    int modal_order = 0;
    std::vector<double> modal_weights;
    double greedy_fraction = 0.0;
};

/// Statistics over the final `window` slots. Throws std::invalid_argument for
/// an empty log or a window outside [1, logs.size()].
Summary summarize(const std::vector<TimeSlotLog>& logs, int window);

}  // namespace vlcsec
