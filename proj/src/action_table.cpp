#include "vlcsec/action_table.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <tuple>

namespace vlcsec {

namespace {

struct Job {
    int order;
    Precoder w;
};

struct Plan {
    std::vector<Job> jobs;           // one per distinct key
    std::vector<std::size_t> slot;   // action index -> job index
};

Plan plan_table(const LinkModel& model, const ActionSpace& space)
{
    Plan plan;
    plan.slot.resize(space.size());
    std::map<std::tuple<int, double, double>, std::size_t> seen;
    for (std::size_t a = 0; a < space.size(); ++a) {
        const int order = space.order_of(a);
        Precoder w = space.precoder_of(a);
        const double gb = std::abs(effective_gain(model.h_bob, w, model.drive).value);
        const double ge = std::abs(effective_gain(model.h_eve, w, model.drive).value);
        const auto [it, fresh] = seen.try_emplace({order, gb, ge}, plan.jobs.size());
        if (fresh) plan.jobs.push_back(Job{order, std::move(w)});
        plan.slot[a] = it->second;
    }
    return plan;
}

std::vector<MetricRecord> scatter(const Plan& plan, const std::vector<MetricRecord>& scored)
{
    std::vector<MetricRecord> table(plan.slot.size());
    for (std::size_t a = 0; a < table.size(); ++a) table[a] = scored[plan.slot[a]];
    return table;
}

MetricRecord score(const LinkModel& model, const Job& job)
{
    try {
        return model.evaluate(job.order, job.w);
    } catch (const std::exception& e) {
        throw std::runtime_error("scoring M=" + std::to_string(job.order) + ": " + e.what());
    }
}

}  // namespace

std::vector<MetricRecord> evaluate_action_table(const LinkModel& model, const ActionSpace& space)
{
    const Plan plan = plan_table(model, space);
    std::vector<MetricRecord> scored(plan.jobs.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::int64_t>(plan.jobs.size());

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t j = 0; j < n; ++j) {
        try {
            scored[static_cast<std::size_t>(j)] = score(model, plan.jobs[static_cast<std::size_t>(j)]);
        } catch (...) {
#pragma omp critical(vlcsec_action_table_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return scatter(plan, scored);
}

std::vector<MetricRecord> evaluate_action_table_serial(const LinkModel& model, const ActionSpace& space)
{
    const Plan plan = plan_table(model, space);
    std::vector<MetricRecord> scored;
    scored.reserve(plan.jobs.size());
    for (const auto& job : plan.jobs) scored.push_back(score(model, job));
    return scatter(plan, scored);
}

}  // namespace vlcsec
