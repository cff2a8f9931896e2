#include "vlcsec/qlearn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

namespace vlcsec {

Rng make_rng(std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Rng(seq);
}

// ---------------------------------------------------------------------------
// Action space

ActionSpace ActionSpace::quantized(std::vector<int> orders, int num_leds, int quant_levels, std::size_t max_actions)
{
    if (orders.empty()) throw std::invalid_argument("action space needs at least one modulation order");
    for (int m : orders)
        if (!is_supported_order(m)) throw std::invalid_argument("unsupported PAM order " + std::to_string(m));
    if (num_leds < 1) throw std::invalid_argument("action space needs at least one LED");
    if (quant_levels < 1) throw std::invalid_argument("precoder quantization needs T >= 1");

    const std::size_t radix = 2 * static_cast<std::size_t>(quant_levels) + 1;
    const std::size_t limit = max_actions / orders.size();
    std::size_t precoders = 1;
    for (int n = 0; n < num_leds; ++n) {
        if (precoders > limit / radix)
            throw CapacityError("action space exceeds the configured maximum of " + std::to_string(max_actions));
        precoders *= radix;
    }

    ActionSpace s;
    s.orders_ = std::move(orders);
    s.num_leds_ = num_leds;
    s.quant_levels_ = quant_levels;
    s.num_precoders_ = precoders;
    return s;
}

ActionSpace ActionSpace::pinned(int order, Precoder w)
{
    if (!is_supported_order(order)) throw std::invalid_argument("unsupported PAM order " + std::to_string(order));
    if (w.weights.empty()) throw std::invalid_argument("pinned precoder is empty");
    if (w.inf_norm() > 1.0) throw std::invalid_argument("pinned precoder violates |w_n| <= 1");
    ActionSpace s;
    s.orders_ = {order};
    s.num_leds_ = static_cast<int>(w.weights.size());
    s.num_precoders_ = 1;
    s.pinned_.push_back(std::move(w));
    return s;
}

std::size_t ActionSpace::encode(const Action& a) const
{
    if (a.order_index >= orders_.size() || a.precoder_index >= num_precoders_)
        throw std::out_of_range("action outside the action space");
    return a.order_index * num_precoders_ + a.precoder_index;
}

Action ActionSpace::decode(std::size_t index) const
{
    if (index >= size()) throw std::out_of_range("action index " + std::to_string(index) + " out of range");
    return Action{index / num_precoders_, index % num_precoders_};
}

int ActionSpace::order_of(std::size_t index) const { return orders_[decode(index).order_index]; }

Precoder ActionSpace::precoder_of(std::size_t index) const
{
    const Action a = decode(index);
    if (!pinned_.empty()) return pinned_[a.precoder_index];

    const auto radix = static_cast<std::size_t>(2 * quant_levels_ + 1);
    Precoder w;
    w.weights.resize(static_cast<std::size_t>(num_leds_));
    std::size_t rest = a.precoder_index;
    for (auto& wn : w.weights) {
        const long t = static_cast<long>(rest % radix) - quant_levels_;
        wn = static_cast<double>(t) / quant_levels_;
        rest /= radix;
    }
    return w;
}

// ---------------------------------------------------------------------------
// State

std::size_t StateKeyHash::operator()(const StateKey& k) const noexcept
{
    std::uint64_t h = k.scenario_id;
    for (int v : {k.ber_bob_bin, k.ber_eve_bin, k.cs_bin})
        h = (h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(v))) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
}

void StateBins::validate() const
{
    if (ber_bins < 2) throw std::invalid_argument("state needs at least 2 BER bins");
    if (!(ber_floor > 0.0 && ber_floor < 1.0)) throw std::invalid_argument("BER floor must lie in (0, 1)");
    if (cs_bins < 1) throw std::invalid_argument("state needs at least 1 secrecy-capacity bin");
    if (!(cs_max > cs_min)) throw std::invalid_argument("secrecy-capacity bin range is empty");
}

std::vector<double> StateBins::ber_edges() const
{
    std::vector<double> edges{ber_floor};
    const double lo = std::log10(ber_floor);
    const int n = ber_bins - 1;
    for (int j = 1; j < n; ++j) edges.push_back(std::pow(10.0, lo * (1.0 - static_cast<double>(j) / n)));
    edges.push_back(1.0);
    return edges;
}

std::vector<double> StateBins::cs_edges() const
{
    std::vector<double> edges;
    const double width = (cs_max - cs_min) / cs_bins;
    for (int j = 1; j < cs_bins; ++j) edges.push_back(cs_min + width * j);
    edges.push_back(cs_max);
    return edges;
}

namespace {

int edge_bin(double v, const std::vector<double>& edges)
{
    const auto it = std::lower_bound(edges.begin(), edges.end(), v);
    const auto idx = static_cast<int>(it - edges.begin());
    return std::min(idx, static_cast<int>(edges.size()) - 1);
}

void hash_bytes(std::uint64_t& h, const char* p, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(p[i]);
        h *= 0x100000001b3ULL;
    }
}

}  // namespace

int ber_bin(double ber, const StateBins& bins) { return edge_bin(ber, bins.ber_edges()); }

int cs_bin(double cs, const StateBins& bins) { return edge_bin(cs, bins.cs_edges()); }

std::uint64_t scenario_id(const ChannelVector& h_bob, const ChannelVector& h_eve)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[32];
    for (const ChannelVector* v : {&h_bob, &h_eve}) {
        for (double g : v->gains) {
            const int n = std::snprintf(buf, sizeof buf, "%.2e;", g);
            hash_bytes(h, buf, static_cast<std::size_t>(n));
        }
        hash_bytes(h, "|", 1);
    }
    return h;
}

StateKey discretize_state(double ber_bob, double ber_eve, double cs, const ChannelVector& h_bob,
                          const ChannelVector& h_eve, const StateBins& bins)
{
    if (!(ber_bob >= 0.0 && ber_bob <= 1.0) || !(ber_eve >= 0.0 && ber_eve <= 1.0))
        throw std::domain_error("BER outside [0, 1]");
    return StateKey{ber_bin(ber_bob, bins), ber_bin(ber_eve, bins), cs_bin(cs, bins), scenario_id(h_bob, h_eve)};
}

// ---------------------------------------------------------------------------
// Learner

void LearnerConfig::validate() const
{
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(learning_rate)) throw std::invalid_argument("learning rate must lie in [0, 1]");
    if (!unit(discount)) throw std::invalid_argument("discount must lie in [0, 1]");
    if (!unit(epsilon_start) || !unit(epsilon_end)) throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (epsilon_decay_slots < 0) throw std::invalid_argument("epsilon decay length must be >= 0");
}

double epsilon_at(long k, const LearnerConfig& cfg)
{
    if (k < 0) throw std::invalid_argument("slot index must be >= 0");
    if (k >= cfg.epsilon_decay_slots) return cfg.epsilon_end;
    const double frac = static_cast<double>(k) / cfg.epsilon_decay_slots;
    return cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * frac;
}

QTable::QTable(std::size_t num_actions) : num_actions_(num_actions)
{
    if (num_actions == 0) throw std::invalid_argument("empty action space");
}

double QTable::value(const StateKey& s, std::size_t a) const
{
    const auto it = rows_.find(s);
    return it == rows_.end() ? 0.0 : it->second.at(a);
}

double QTable::max_value(const StateKey& s) const
{
    const auto it = rows_.find(s);
    if (it == rows_.end()) return 0.0;
    return *std::max_element(it->second.begin(), it->second.end());
}

void QTable::set(const StateKey& s, std::size_t a, double v)
{
    if (a >= num_actions_) throw std::out_of_range("action index out of range");
    auto [it, inserted] = rows_.try_emplace(s);
    if (inserted) it->second.assign(num_actions_, 0.0);
    it->second[a] = v;
}

const std::vector<double>* QTable::row(const StateKey& s) const
{
    const auto it = rows_.find(s);
    return it == rows_.end() ? nullptr : &it->second;
}

double QTable::max_abs() const
{
    double m = 0.0;
    for (const auto& [key, row] : rows_)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

std::vector<std::size_t> greedy_actions(const QTable& q, const StateKey& s)
{
    std::vector<std::size_t> best;
    const auto* row = q.row(s);
    if (row == nullptr) {
        best.resize(q.num_actions());
        for (std::size_t a = 0; a < best.size(); ++a) best[a] = a;
        return best;
    }
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < row->size(); ++a) {
        const double v = (*row)[a];
        if (v > top) {
            top = v;
            best.clear();
        }
        if (v == top) best.push_back(a);
    }
    return best;
}

ActionChoice select_action(const QTable& q, const StateKey& s, double epsilon, Rng& rng)
{
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
        std::uniform_int_distribution<std::size_t> any(0, q.num_actions() - 1);
        return ActionChoice{any(rng), false};
    }
    const auto best = greedy_actions(q, s);
    std::uniform_int_distribution<std::size_t> tie(0, best.size() - 1);
    return ActionChoice{best[tie(rng)], true};
}

double bellman_update(QTable& q, const StateKey& s, std::size_t a, double u, const StateKey& s_next,
                      const LearnerConfig& cfg)
{
    if (!std::isfinite(u)) throw std::invalid_argument("utility must be finite");
    const double target = u + cfg.discount * q.max_value(s_next);
    const double updated = (1.0 - cfg.learning_rate) * q.value(s, a) + cfg.learning_rate * target;
    q.set(s, a, updated);
    return updated;
}

// ---------------------------------------------------------------------------
// Checkpoint

namespace {

constexpr const char* kQTableVersion = "# vlcsec-qtable v1";
constexpr const char* kQTableHeader = "ber_bob_bin,ber_eve_bin,cs_bin,scenario_id,action,value";

}  // namespace

void write_qtable(std::ostream& os, const QTable& q)
{
    std::vector<const std::pair<const StateKey, std::vector<double>>*> entries;
    for (const auto& e : q.rows()) entries.push_back(&e);
    std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) {
        const StateKey& x = a->first;
        const StateKey& y = b->first;
        return std::tie(x.ber_bob_bin, x.ber_eve_bin, x.cs_bin, x.scenario_id) <
               std::tie(y.ber_bob_bin, y.ber_eve_bin, y.cs_bin, y.scenario_id);
    });

    os << kQTableVersion << '\n' << kQTableHeader << '\n';
    char buf[40];
    for (const auto* e : entries) {
        const StateKey& s = e->first;
        for (std::size_t a = 0; a < e->second.size(); ++a) {
            const double v = e->second[a];
            if (v == 0.0) continue;
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << s.ber_bob_bin << ',' << s.ber_eve_bin << ',' << s.cs_bin << ',' << s.scenario_id << ',' << a << ','
               << buf << '\n';
        }
    }
}

QTable read_qtable(std::istream& is, std::size_t num_actions)
{
    std::string line;
    if (!std::getline(is, line) || line != kQTableVersion)
        throw std::runtime_error("not a vlcsec Q-table checkpoint (bad version line)");
    if (!std::getline(is, line) || line != kQTableHeader) throw std::runtime_error("bad Q-table header");

    QTable q(num_actions);
    int lineno = 2;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        StateKey s;
        std::size_t a = 0;
        double v = 0.0;
        char c1, c2, c3, c4, c5;
        if (!(row >> s.ber_bob_bin >> c1 >> s.ber_eve_bin >> c2 >> s.cs_bin >> c3 >> s.scenario_id >> c4 >> a >> c5 >>
              v) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',')
            throw std::runtime_error("malformed Q-table record on line " + std::to_string(lineno));
        if (a >= num_actions)
            throw std::runtime_error("Q-table action " + std::to_string(a) + " on line " + std::to_string(lineno) +
                                     " outside an action space of " + std::to_string(num_actions));
        q.set(s, a, v);
    }
    return q;
}

}  // namespace vlcsec
