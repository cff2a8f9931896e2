#include "vlcsec/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "vlcsec/montecarlo.hpp"

namespace vlcsec {

namespace {

std::string format(const char* fmt, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

OracleOutcome ber_oracle(ValidationLevel level, const ValidationHooks& hooks)
{
    const std::uint64_t n = level == ValidationLevel::full ? 1'000'000 : 200'000;
    OracleOutcome out{"ber_mc_vs_closed_form", true, {}};
    std::uint64_t seed = 101;
    for (int order : {2, 4, 8, 16}) {
        for (double target : {1e-1, 1e-2, 1e-3}) {
            const double g = gain_for_ber(order, target);
            const double es = build_constellation(order, 1.0).avg_symbol_energy;
            const double closed = hooks.closed_form_ber(order, EffectiveGain{g}, 1.0, es);
            const McEstimate mc = mc_ber_oracle(order, EffectiveGain{g}, 1.0, es, n, seed++);
            const double z = std::abs(closed - mc.estimate) / mc.std_error;
            if (!(z <= 3.0)) {
                out.passed = false;
                out.detail = format("M=%d target=%.0e: closed %.6g vs MC %.6g (%.2f SE)", order, target, closed,
                                    mc.estimate, z);
                return out;
            }
        }
    }
    out.detail = format("12 points within 3 SE (%llu symbols each)", static_cast<unsigned long long>(n));
    return out;
}

OracleOutcome gaussian_entropy_oracle()
{
    OracleOutcome out{"quadrature_single_gaussian", true, {}};
    double worst = 0.0;
    for (double sigma : {1e-6, 1.0, 1e3}) {
        const double h = mixture_entropy(GaussianMixture{{0.0}, sigma});
        worst = std::max(worst, std::abs(h - noise_entropy(sigma)));
    }
    out.passed = worst < 1e-6;
    out.detail = format("max |error| %.3g bits", worst);
    return out;
}

OracleOutcome mixture_entropy_oracle(ValidationLevel level)
{
    const std::uint64_t n = level == ValidationLevel::full ? 10'000'000 : 1'000'000;
    const GaussianMixture mix{{-3.0, -1.0, 1.0, 3.0}, 1.0};
    const double quad = mixture_entropy(mix);
    const McEstimate mc = mc_entropy_oracle(mix, n, 202);
    const double z = std::abs(quad - mc.estimate) / mc.std_error;
    return {"mixture_entropy_mc", z <= 3.0, format("quadrature %.8f vs MC %.8f (%.2f SE)", quad, mc.estimate, z)};
}

OracleOutcome mutual_information_oracle(ValidationLevel level)
{
    const std::uint64_t n = level == ValidationLevel::full ? 4'000'000 : 500'000;
    OracleOutcome out{"mutual_information_mc", true, {}};
    std::uint64_t seed = 303;
    struct Point {
        int order;
        double snr;  // |g| A / sigma
    };
    for (const Point p : {Point{2, 1.0}, Point{4, 3.0}, Point{8, 6.0}, Point{64, 10.0}}) {
        const PamConstellation c = build_constellation(p.order, 1.0);
        const double quad = mutual_information(c, EffectiveGain{p.snr}, 1.0);
        const McEstimate mc = mc_mutual_information_oracle(c, EffectiveGain{p.snr}, 1.0, n, seed++);
        const double z = std::abs(quad - mc.estimate) / mc.std_error;
        if (!(z <= 3.0)) {
            out.passed = false;
            out.detail = format("M=%d snr=%g: quadrature %.6f vs MC %.6f (%.2f SE)", p.order, p.snr, quad,
                                mc.estimate, z);
            return out;
        }
    }
    out.detail = "4 points within 3 SE";
    return out;
}

OracleOutcome mi_limits_oracle()
{
    const PamConstellation c = build_constellation(8, 1.0);
    const double low = mutual_information(c, EffectiveGain{1e-3}, 1.0);
    const double high = mutual_information(c, EffectiveGain{1e6}, 1.0);
    const bool ok = low < 0.01 && std::abs(high - 3.0) < 0.01;
    return {"mutual_information_limits", ok, format("I(1e-3) = %.3g, I(1e6) = %.6f", low, high)};
}

OracleOutcome secrecy_oracle(const ExperimentConfig& cfg, ValidationLevel level)
{
    const std::uint64_t n = level == ValidationLevel::full ? 4'000'000 : 500'000;
    const Scenario sc = build_scenarios(cfg).front();
    const LinkModel model = LinkModel::from(sc, {}, cfg.weights, false);
    const Precoder ones{std::vector<double>(sc.luminaires.size(), 1.0)};
    const EffectiveGain gb = effective_gain(model.h_bob, ones, sc.drive);
    const EffectiveGain ge = effective_gain(model.h_eve, ones, sc.drive);

    OracleOutcome out{"secrecy_capacity_mc_" + sc.name, true, {}};
    std::uint64_t seed = 404;
    for (int order : {2, 16}) {
        const PamConstellation c = build_constellation(order, sc.drive);
        const double cs = secrecy_capacity(c, gb, sc.sigma_bob, ge, sc.sigma_eve);
        const McEstimate b = mc_mutual_information_oracle(c, gb, sc.sigma_bob, n, seed++);
        const McEstimate e = mc_mutual_information_oracle(c, ge, sc.sigma_eve, n, seed++);
        // A saturated channel gives zero sample variance; allow the MI tolerance.
        const double tol = 3.0 * std::hypot(b.std_error, e.std_error) + 1e-6;
        const double diff = std::abs(cs - (b.estimate - e.estimate));
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += format("M=%d: quadrature %.6f vs MC %.6f", order, cs, b.estimate - e.estimate);
        if (!(diff <= tol)) out.passed = false;
    }
    return out;
}

OracleOutcome bandit_oracle(ValidationLevel level)
{
    const int seeds = level == ValidationLevel::full ? 20 : 5;
    const std::vector<double> utilities{0.3, 0.9, 0.1, 0.5, 0.7, 0.2, 1.0, 0.4, 0.8, 0.6};
    LearnerConfig learner;  // 0.5 / 0.5, epsilon 1.0 -> 0.1 over 600 slots
    int good = 0;
    for (int s = 0; s < seeds; ++s) {
        const auto r = run_bandit(utilities, learner, 2000, 200, 1000 + static_cast<std::uint64_t>(s));
        if (r.optimal_action == 6 && r.final_optimal_fraction >= 0.95) ++good;
    }
    const int needed = (seeds * 9 + 9) / 10;
    return {"bandit_convergence", good >= needed, format("%d/%d seeds converged", good, seeds)};
}

}  // namespace

ValidationLevel parse_validation_level(const std::string& s)
{
    if (s == "fast") return ValidationLevel::fast;
    if (s == "full") return ValidationLevel::full;
    throw std::invalid_argument("validate level must be 'fast' or 'full', got '" + s + "'");
}

double gain_for_ber(int order, double target)
{
    const double es = build_constellation(order, 1.0).avg_symbol_energy;
    double lo = std::log(1e-6);
    double hi = std::log(1e6);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (pam_ber(order, EffectiveGain{std::exp(mid)}, 1.0, es) > target)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

BanditOutcome run_bandit(const std::vector<double>& utilities, const LearnerConfig& learner, int num_slots,
                         int final_window, std::uint64_t seed)
{
    if (utilities.empty()) throw std::invalid_argument("bandit needs at least one action");
    BanditOutcome out;
    out.optimal_action =
        static_cast<std::size_t>(std::max_element(utilities.begin(), utilities.end()) - utilities.begin());

    QTable q(utilities.size());
    const StateKey only{};
    Rng rng = make_rng(seed);
    int hits = 0;
    for (int k = 0; k < num_slots; ++k) {
        if (k >= num_slots - final_window) {
            const auto best = greedy_actions(q, only);
            if (best.size() == 1 && best.front() == out.optimal_action) ++hits;
        }
        const ActionChoice a = select_action(q, only, epsilon_at(k, learner), rng);
        bellman_update(q, only, a.index, utilities[a.index], only, learner);
    }
    out.final_optimal_fraction = static_cast<double>(hits) / final_window;
    return out;
}

std::vector<OracleOutcome> run_validation(const ExperimentConfig& cfg, ValidationLevel level,
                                          const ValidationHooks& hooks)
{
    std::vector<OracleOutcome> out;
    out.push_back(ber_oracle(level, hooks));
    out.push_back(gaussian_entropy_oracle());
    out.push_back(mixture_entropy_oracle(level));
    out.push_back(mutual_information_oracle(level));
    out.push_back(mi_limits_oracle());
    out.push_back(secrecy_oracle(cfg, level));
    out.push_back(bandit_oracle(level));
    return out;
}

}  // namespace vlcsec
