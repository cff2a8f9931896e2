#include <gtest/gtest.h>

#include <cmath>

#include "vlcsec/action_table.hpp"
#include "vlcsec/config.hpp"
#include "vlcsec/experiment.hpp"

namespace vlcsec {
namespace {

const ChannelVector kHb{{2e-6, 1e-6}};
const ChannelVector kHe{{5e-7, 5e-7}};

// Metrics that identify the action that produced them.
MetricRecord tagged_metrics(std::size_t a)
{
    MetricRecord m;
    m.secrecy_capacity = static_cast<double>(a % 9) - 1.0;
    m.ber_bob = std::ldexp(1.0, -static_cast<int>(a % 20) - 1);
    m.ber_eve = 0.5 - 0.01 * static_cast<double>(a % 7);
    m.utility = utility(m.secrecy_capacity, m.ber_bob, m.ber_eve, UtilityWeights{});
    return m;
}

RunConfig stub_config(int slots, std::uint64_t seed)
{
    RunConfig cfg;
    cfg.num_slots = slots;
    cfg.seed = seed;
    cfg.summary_window = std::min(slots, 50);
    return cfg;
}

TEST(RunEpisode, SlotContractWithTaggedStub)
{
    const auto space = ActionSpace::quantized({2, 4, 8}, 2, 1);
    const RunConfig cfg = stub_config(300, 5);
    std::vector<std::size_t> calls;
    const ActionEvaluator eval = [&](std::size_t a) {
        calls.push_back(a);
        return tagged_metrics(a);
    };
    const auto result = run_episode(space, eval, kHb, kHe, cfg);
    ASSERT_EQ(result.logs.size(), 300u);
    ASSERT_EQ(calls.size(), 300u);

    EXPECT_FALSE(result.logs[0].state.has_value());
    for (std::size_t k = 0; k < result.logs.size(); ++k) {
        const TimeSlotLog& log = result.logs[k];
        EXPECT_EQ(log.slot, static_cast<int>(k));
        EXPECT_EQ(log.action_index, calls[k]);
        const MetricRecord m = tagged_metrics(log.action_index);
        EXPECT_EQ(log.secrecy_capacity, m.secrecy_capacity);
        EXPECT_EQ(log.ber_bob, m.ber_bob);
        EXPECT_EQ(log.ber_eve, m.ber_eve);
        EXPECT_EQ(log.utility, m.utility);
        EXPECT_EQ(log.order, space.order_of(log.action_index));
        EXPECT_EQ(log.weights, space.precoder_of(log.action_index).weights);
        if (k == 0) continue;
        // State of slot k comes from slot k-1's observed metrics.
        const TimeSlotLog& prev = result.logs[k - 1];
        EXPECT_EQ(*log.state,
                  discretize_state(prev.ber_bob, prev.ber_eve, prev.secrecy_capacity, kHb, kHe, cfg.bins));
        EXPECT_DOUBLE_EQ(log.epsilon, epsilon_at(static_cast<long>(k), cfg.learner));
    }
}

TEST(RunEpisode, QTableEqualsReplayedBellmanUpdates)
{
    const auto space = ActionSpace::quantized({2, 4}, 2, 1);
    const RunConfig cfg = stub_config(400, 9);
    const auto result = run_episode(space, tagged_metrics, kHb, kHe, cfg);
    QTable replay(space.size());
    for (std::size_t k = 1; k < result.logs.size(); ++k) {
        const TimeSlotLog& log = result.logs[k];
        const StateKey next = discretize_state(log.ber_bob, log.ber_eve, log.secrecy_capacity, kHb, kHe, cfg.bins);
        bellman_update(replay, *log.state, log.action_index, log.utility, next, cfg.learner);
    }
    EXPECT_EQ(replay.rows(), result.q.rows());
}

TEST(RunEpisode, DeterministicInSeed)
{
    const auto space = ActionSpace::quantized({2, 4, 8}, 2, 2);
    const auto a = run_episode(space, tagged_metrics, kHb, kHe, stub_config(500, 77));
    const auto b = run_episode(space, tagged_metrics, kHb, kHe, stub_config(500, 77));
    const auto c = run_episode(space, tagged_metrics, kHb, kHe, stub_config(500, 78));
    EXPECT_EQ(a.logs, b.logs);
    EXPECT_EQ(a.q.rows(), b.q.rows());
    EXPECT_NE(a.logs, c.logs);
}

TEST(RunEpisode, SingleSlotOnlyPrimes)
{
    const auto space = ActionSpace::quantized({2}, 2, 1);
    const auto r = run_episode(space, tagged_metrics, kHb, kHe, stub_config(1, 1));
    ASSERT_EQ(r.logs.size(), 1u);
    EXPECT_FALSE(r.logs[0].state.has_value());
    EXPECT_EQ(r.q.num_states(), 0u);
}

TEST(RunEpisode, EvaluatorFailureReportsSlot)
{
    const auto space = ActionSpace::quantized({2}, 2, 1);
    int n = 0;
    const ActionEvaluator eval = [&](std::size_t a) {
        if (++n == 4) throw std::runtime_error("boom");
        return tagged_metrics(a);
    };
    try {
        run_episode(space, eval, kHb, kHe, stub_config(10, 1));
        FAIL() << "expected EpisodeError";
    } catch (const EpisodeError& e) {
        EXPECT_EQ(e.slot(), 3);
    }
}

class ScenarioTest : public ::testing::Test {
protected:
    ExperimentConfig cfg = default_config();
    std::vector<Scenario> scenarios = build_scenarios(cfg);
};

TEST_F(ScenarioTest, LoggedUtilityMatchesRecomputation)
{
    RunConfig rc = make_run_config(cfg, RunMode::adaptive(), 3);
    rc.num_slots = 200;
    rc.summary_window = 50;
    const auto r = run_episode(scenarios.at(0), rc);
    for (const auto& log : r.logs) {
        EXPECT_NEAR(log.utility, utility(log.secrecy_capacity, log.ber_bob, log.ber_eve, rc.weights), 1e-12);
        EXPECT_GE(log.ber_bob, 0.0);
        EXPECT_LE(log.ber_eve, 0.5 + 1e-12);
    }
}

TEST_F(ScenarioTest, ZeroPrecoderCarriesNoInformation)
{
    RunConfig rc = make_run_config(cfg, RunMode::fixed_both(16, Precoder{{0.0, 0.0, 0.0, 0.0}}), 1);
    rc.num_slots = 20;
    rc.summary_window = 10;
    const auto r = run_episode(scenarios.at(0), rc);
    for (const auto& log : r.logs) {
        EXPECT_EQ(log.secrecy_capacity, 0.0);
        EXPECT_DOUBLE_EQ(log.ber_bob, 0.5);
        EXPECT_DOUBLE_EQ(log.ber_eve, 0.5);
        EXPECT_EQ(log.order, 16);
    }
}

TEST_F(ScenarioTest, BaselineKeepsSixtyFourLevels)
{
    RunConfig rc = make_run_config(cfg, RunMode::adaptive(), 2);
    rc.num_slots = 300;
    rc.summary_window = 100;
    const auto r = run_baseline(scenarios.at(1), rc);
    for (const auto& log : r.logs) EXPECT_EQ(log.order, 64);
}

TEST_F(ScenarioTest, ParallelActionTableMatchesSerial)
{
    const RunConfig rc = make_run_config(cfg, RunMode::adaptive(), 1);
    for (const auto& sc : scenarios) {
        const LinkModel model = LinkModel::from(sc, rc.quadrature, rc.weights, rc.clamp_secrecy);
        const ActionSpace space = make_action_space(rc, static_cast<int>(sc.luminaires.size()));
        const auto par = evaluate_action_table(model, space);
        const auto ser = evaluate_action_table_serial(model, space);
        ASSERT_EQ(par.size(), space.size());
        EXPECT_EQ(par, ser) << sc.name;
        // Direct scoring uses the signed gain; the table shares entries by |g|,
        // so the two agree to rounding.
        for (std::size_t a = 0; a < space.size(); a += 97) {
            const MetricRecord direct = model.evaluate(space.order_of(a), space.precoder_of(a));
            EXPECT_NEAR(par[a].secrecy_capacity, direct.secrecy_capacity, 1e-9) << sc.name << " a=" << a;
            EXPECT_NEAR(par[a].ber_bob, direct.ber_bob, 1e-12 * direct.ber_bob + 1e-300) << sc.name << " a=" << a;
            EXPECT_NEAR(par[a].ber_eve, direct.ber_eve, 1e-12) << sc.name << " a=" << a;
            EXPECT_NEAR(par[a].utility, direct.utility, 1e-9) << sc.name << " a=" << a;
        }
    }
}

TEST_F(ScenarioTest, SecrecyCapacityNonnegativeWhenClamped)
{
    RunConfig rc = make_run_config(cfg, RunMode::adaptive(), 1);
    rc.clamp_secrecy = true;
    const auto prepared = prepare(scenarios.at(2), rc);
    for (const auto& m : prepared.table) EXPECT_GE(m.secrecy_capacity, 0.0);
}

TEST(Summarize, WindowStatisticsAndModalTieBreak)
{
    std::vector<TimeSlotLog> logs(4);
    const double cs[] = {9.0, 1.0, 2.0, 3.0};
    const std::size_t actions[] = {0, 5, 3, 5};
    for (int k = 0; k < 4; ++k) {
        logs[k].slot = k;
        logs[k].secrecy_capacity = cs[k];
        logs[k].action_index = actions[k];
        logs[k].order = 4;
        logs[k].greedy = k >= 2;
    }
    const Summary s = summarize(logs, 3);
    EXPECT_DOUBLE_EQ(s.secrecy_capacity.mean, 2.0);
    EXPECT_DOUBLE_EQ(s.secrecy_capacity.min, 1.0);
    EXPECT_DOUBLE_EQ(s.secrecy_capacity.max, 3.0);
    EXPECT_EQ(s.modal_action, 5u);
    EXPECT_DOUBLE_EQ(s.greedy_fraction, 2.0 / 3.0);
    logs[3].action_index = 3;
    logs[2].action_index = 8;
    EXPECT_EQ(summarize(logs, 3).modal_action, 3u);  // 5, 8, 3: lowest index wins
    EXPECT_THROW(summarize(logs, 0), std::invalid_argument);
    EXPECT_THROW(summarize(logs, 5), std::invalid_argument);
    EXPECT_THROW(summarize({}, 1), std::invalid_argument);
}

TEST(RunMode, Labels)
{
    EXPECT_EQ(RunMode::adaptive().label(), "adaptive");
    EXPECT_EQ(RunMode::fixed_order(64).label(), "fixed64");
    EXPECT_EQ(RunMode::fixed_both(8, Precoder{{1.0}}).label(), "static8");
}

}  // namespace
}  // namespace vlcsec
