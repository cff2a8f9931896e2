#pragma once

// Tabular Q-learning over the joint (PAM order, quantized precoder) action space.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "vlcsec/geometry.hpp"
#include "vlcsec/pam.hpp"

namespace vlcsec {

using Rng = std::mt19937_64;

/// Deterministic generator for a run seed.
Rng make_rng(std::uint64_t seed);

struct Action {
    std::size_t order_index = 0;
    std::size_t precoder_index = 0;

    friend bool operator==(const Action&, const Action&) = default;
};

class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Finite set of (order, precoder) pairs with a dense index
/// `order_index * num_precoders + precoder_index`.
///
/// A quantized space enumerates every weight vector with entries in
/// {t / T : -T <= t <= T}; precoder_index is the mixed-radix number whose
/// n-th digit (least significant first) is t_n + T. A pinned space holds one
/// explicit precoder.
class ActionSpace {
public:
    static ActionSpace quantized(std::vector<int> orders, int num_leds, int quant_levels,
                                 std::size_t max_actions = 1'000'000);
    static ActionSpace pinned(int order, Precoder w);

    std::size_t size() const { return orders_.size() * num_precoders_; }
    std::size_t num_precoders() const { return num_precoders_; }
    const std::vector<int>& orders() const { return orders_; }
    int num_leds() const { return num_leds_; }
    int quant_levels() const { return quant_levels_; }  // 0 for a pinned space

    std::size_t encode(const Action& a) const;
    Action decode(std::size_t index) const;

    int order_of(std::size_t index) const;
    Precoder precoder_of(std::size_t index) const;

private:
    std::vector<int> orders_;
    int num_leds_ = 0;
    int quant_levels_ = 0;
    std::size_t num_precoders_ = 0;
    std::vector<Precoder> pinned_;
};

struct StateKey {
    int ber_bob_bin = 0;
    int ber_eve_bin = 0;
    int cs_bin = 0;
    std::uint64_t scenario_id = 0;

    friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept;
};

/// Bin layout for the continuous part of the state. All intervals are
/// closed on the right: a value equal to an edge lands in the lower bin.
struct StateBins {
    int ber_bins = 8;             // bin 0 holds BER <= ber_floor
    double ber_floor = 1e-6;
    int cs_bins = 8;
    double cs_min = -1.0;
    double cs_max = 7.0;

    void validate() const;
    std::vector<double> ber_edges() const;  // upper edges, last == 1
    std::vector<double> cs_edges() const;   // upper edges, last == cs_max
    friend bool operator==(const StateBins&, const StateBins&) = default;
};

int ber_bin(double ber, const StateBins& bins);
int cs_bin(double cs, const StateBins& bins);

/// FNV-1a hash of both channel vectors after rounding to 3 significant digits.
std::uint64_t scenario_id(const ChannelVector& h_bob, const ChannelVector& h_eve);

StateKey discretize_state(double ber_bob, double ber_eve, double cs, const ChannelVector& h_bob,
                          const ChannelVector& h_eve, const StateBins& bins);

struct LearnerConfig {
    double learning_rate = 0.5;
    double discount = 0.5;
    double epsilon_start = 1.0;
    double epsilon_end = 0.1;
    int epsilon_decay_slots = 600;

    void validate() const;
    friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

/// Linear decay from epsilon_start to epsilon_end over epsilon_decay_slots,
/// then constant.
double epsilon_at(long k, const LearnerConfig& cfg);

/// Q(s, a) for every state ever touched; missing rows and entries read as 0.
class QTable {
public:
    explicit QTable(std::size_t num_actions);

    std::size_t num_actions() const { return num_actions_; }
    std::size_t num_states() const { return rows_.size(); }

    double value(const StateKey& s, std::size_t a) const;
    double max_value(const StateKey& s) const;
    void set(const StateKey& s, std::size_t a, double v);

    /// nullptr when the state has never been written.
    const std::vector<double>* row(const StateKey& s) const;

    /// Largest |Q| over all stored entries.
    double max_abs() const;

    const std::unordered_map<StateKey, std::vector<double>, StateKeyHash>& rows() const { return rows_; }

private:
    std::size_t num_actions_;
    std::unordered_map<StateKey, std::vector<double>, StateKeyHash> rows_;
};

struct ActionChoice {
    std::size_t index = 0;
    bool greedy = false;
};

/// Epsilon-greedy: with probability epsilon a uniform action, otherwise an
/// argmax of Q(s, .) with ties broken uniformly at random.
ActionChoice select_action(const QTable& q, const StateKey& s, double epsilon, Rng& rng);

/// All maximizers of Q(s, .) in index order.
std::vector<std::size_t> greedy_actions(const QTable& q, const StateKey& s);

/// Q(s,a) <- (1 - lr) Q(s,a) + lr (u + discount * max_a' Q(s', a')). Returns the new value.
double bellman_update(QTable& q, const StateKey& s, std::size_t a, double u, const StateKey& s_next,
                      const LearnerConfig& cfg);

/// Q-table checkpoint, format "vlcsec-qtable v1": a version line, a CSV
/// header, then one row per stored nonzero entry ordered by state then action.
void write_qtable(std::ostream& os, const QTable& q);
QTable read_qtable(std::istream& is, std::size_t num_actions);

}  // namespace vlcsec
