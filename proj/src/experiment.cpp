#include "vlcsec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vlcsec/action_table.hpp"

namespace vlcsec {

void Scenario::validate() const
{
    if (luminaires.empty()) throw std::invalid_argument("scenario '" + name + "' has no luminaires");
    drive.validate();
    bob.validate();
    eve.validate();
    if (!(sigma_bob > 0.0) || !(sigma_eve > 0.0))
        throw std::domain_error("scenario '" + name + "' needs positive noise levels");
}

LinkModel LinkModel::from(const Scenario& sc, const QuadratureConfig& q, const UtilityWeights& w, bool clamp_secrecy)
{
    sc.validate();
    q.validate();
    w.validate();
    LinkModel m;
    m.h_bob = channel_vector(sc.luminaires, sc.bob);
    m.h_eve = channel_vector(sc.luminaires, sc.eve);
    m.drive = sc.drive;
    m.sigma_bob = sc.sigma_bob;
    m.sigma_eve = sc.sigma_eve;
    m.quadrature = q;
    m.weights = w;
    m.clamp_secrecy = clamp_secrecy;
    return m;
}

MetricRecord LinkModel::evaluate(int order, const Precoder& w) const
{
    const PamConstellation c = build_constellation(order, drive);
    const EffectiveGain gb = effective_gain(h_bob, w, drive);
    const EffectiveGain ge = effective_gain(h_eve, w, drive);

    MetricRecord r;
    r.secrecy_capacity = secrecy_capacity(c, gb, sigma_bob, ge, sigma_eve, quadrature);
    if (clamp_secrecy) r.secrecy_capacity = std::max(0.0, r.secrecy_capacity);
    r.ber_bob = pam_ber(order, gb, sigma_bob, c.avg_symbol_energy);
    r.ber_eve = pam_ber(order, ge, sigma_eve, c.avg_symbol_energy);
    r.utility = utility(r.secrecy_capacity, r.ber_bob, r.ber_eve, weights);
    return r;
}

std::string RunMode::label() const
{
    switch (kind) {
    case Kind::adaptive:
        return "adaptive";
    case Kind::fixed_order:
        return "fixed" + std::to_string(order);
    case Kind::fixed_both:
        return "static" + std::to_string(order);
    }
    return "unknown";
}

void RunConfig::validate() const
{
    if (num_slots < 1) throw std::invalid_argument("num_slots must be >= 1");
    if (summary_window < 1) throw std::invalid_argument("summary_window must be >= 1");
    weights.validate();
    learner.validate();
    bins.validate();
    quadrature.validate();
    if (mode.kind != RunMode::Kind::adaptive && !is_supported_order(mode.order))
        throw std::invalid_argument("fixed mode uses unsupported PAM order " + std::to_string(mode.order));
}

ActionSpace make_action_space(const RunConfig& cfg, int num_leds)
{
    switch (cfg.mode.kind) {
    case RunMode::Kind::adaptive:
        return ActionSpace::quantized(cfg.orders, num_leds, cfg.quant_levels, cfg.max_actions);
    case RunMode::Kind::fixed_order:
        return ActionSpace::quantized({cfg.mode.order}, num_leds, cfg.quant_levels, cfg.max_actions);
    case RunMode::Kind::fixed_both:
        if (static_cast<int>(cfg.mode.precoder.weights.size()) != num_leds)
            throw std::invalid_argument("pinned precoder length does not match the number of luminaires");
        return ActionSpace::pinned(cfg.mode.order, cfg.mode.precoder);
    }
    throw std::logic_error("unknown run mode");
}

EpisodeError::EpisodeError(int slot, const std::string& what)
    : std::runtime_error("slot " + std::to_string(slot) + ": " + what), slot_(slot)
{
}

namespace {

MetricRecord evaluate_at(const ActionEvaluator& evaluate, std::size_t action, int slot)
{
    try {
        return evaluate(action);
    } catch (const std::exception& e) {
        throw EpisodeError(slot, e.what());
    }
}

TimeSlotLog make_log(int slot, std::size_t action, const ActionSpace& space, const MetricRecord& m, double epsilon,
                     bool greedy)
{
    TimeSlotLog log;
    log.slot = slot;
    log.action_index = action;
    log.order = space.order_of(action);
    log.weights = space.precoder_of(action).weights;
    log.secrecy_capacity = m.secrecy_capacity;
    log.ber_bob = m.ber_bob;
    log.ber_eve = m.ber_eve;
    log.utility = m.utility;
    log.epsilon = epsilon;
    log.greedy = greedy;
    return log;
}

}  // namespace

EpisodeResult run_episode(const ActionSpace& space, const ActionEvaluator& evaluate, const ChannelVector& h_bob,
                          const ChannelVector& h_eve, const RunConfig& cfg)
{
    cfg.validate();
    EpisodeResult result{{}, QTable(space.size())};
    result.logs.reserve(static_cast<std::size_t>(cfg.num_slots));
    Rng rng = make_rng(cfg.seed);

    std::uniform_int_distribution<std::size_t> initial(0, space.size() - 1);
    const std::size_t a0 = initial(rng);
    MetricRecord prev = evaluate_at(evaluate, a0, 0);
    result.logs.push_back(make_log(0, a0, space, prev, epsilon_at(0, cfg.learner), false));

    for (int k = 1; k < cfg.num_slots; ++k) {
        const StateKey s = discretize_state(prev.ber_bob, prev.ber_eve, prev.secrecy_capacity, h_bob, h_eve, cfg.bins);
        const double eps = epsilon_at(k, cfg.learner);
        const ActionChoice choice = select_action(result.q, s, eps, rng);
        const MetricRecord m = evaluate_at(evaluate, choice.index, k);
        const StateKey s_next = discretize_state(m.ber_bob, m.ber_eve, m.secrecy_capacity, h_bob, h_eve, cfg.bins);
        bellman_update(result.q, s, choice.index, m.utility, s_next, cfg.learner);

        TimeSlotLog log = make_log(k, choice.index, space, m, eps, choice.greedy);
        log.state = s;
        result.logs.push_back(std::move(log));
        prev = m;
    }
    return result;
}

PreparedScenario prepare(const Scenario& sc, const RunConfig& cfg)
{
    cfg.validate();
    LinkModel model = LinkModel::from(sc, cfg.quadrature, cfg.weights, cfg.clamp_secrecy);
    ActionSpace space = make_action_space(cfg, static_cast<int>(sc.luminaires.size()));
    std::vector<MetricRecord> table = evaluate_action_table(model, space);
    return PreparedScenario{sc, cfg.mode, std::move(model), std::move(space), std::move(table)};
}

EpisodeResult run_episode(const PreparedScenario& prepared, const RunConfig& cfg)
{
    if (!(prepared.mode == cfg.mode)) throw std::invalid_argument("prepared scenario was built for another run mode");
    const auto& table = prepared.table;
    auto lookup = [&table](std::size_t a) { return table.at(a); };
    return run_episode(prepared.space, lookup, prepared.model.h_bob, prepared.model.h_eve, cfg);
}

EpisodeResult run_episode(const Scenario& sc, const RunConfig& cfg) { return run_episode(prepare(sc, cfg), cfg); }

EpisodeResult run_baseline(const Scenario& sc, RunConfig cfg)
{
    if (cfg.mode.kind == RunMode::Kind::adaptive) cfg.mode = RunMode::fixed_order(64);
    return run_episode(sc, cfg);
}

Summary summarize(const std::vector<TimeSlotLog>& logs, int window)
{
    if (logs.empty()) throw std::invalid_argument("cannot summarize an empty log");
    if (window < 1 || static_cast<std::size_t>(window) > logs.size())
        throw std::invalid_argument("summary window must lie in [1, " + std::to_string(logs.size()) + "]");

    const auto first = logs.end() - window;
    Summary s;
    s.window = window;
    auto stat = [&](auto field) {
        Stat st{0.0, field(*first), field(*first)};
        for (auto it = first; it != logs.end(); ++it) {
            const double v = field(*it);
            st.mean += v;
            st.min = std::min(st.min, v);
            st.max = std::max(st.max, v);
        }
        st.mean /= window;
        return st;
    };
    s.secrecy_capacity = stat([](const TimeSlotLog& l) { return l.secrecy_capacity; });
    s.ber_bob = stat([](const TimeSlotLog& l) { return l.ber_bob; });
    s.ber_eve = stat([](const TimeSlotLog& l) { return l.ber_eve; });
    s.utility = stat([](const TimeSlotLog& l) { return l.utility; });

    std::map<std::size_t, int> counts;
    int greedy = 0;
    for (auto it = first; it != logs.end(); ++it) {
        ++counts[it->action_index];
        greedy += it->greedy ? 1 : 0;
    }
    // Lowest index wins ties.
    const auto modal = std::max_element(counts.begin(), counts.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
    s.modal_action = modal->first;
    for (auto it = first; it != logs.end(); ++it) {
        if (it->action_index == s.modal_action) {
            s.modal_order = it->order;
            s.modal_weights = it->weights;
            break;
        }
    }
    s.greedy_fraction = static_cast<double>(greedy) / window;
    return s;
}

}  // namespace vlcsec
