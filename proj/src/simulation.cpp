#include "scps/simulation.hpp"

#include "scps/mdp.hpp"
#include "scps/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scps {
namespace simulation {

Realization draw_realization(const Instance& instance, std::uint64_t master_seed,
                             std::uint64_t run_index) {
    Realization r;
    r.seed = mix_seed(master_seed, run_index);
    SplitMix64 rng(r.seed);
    r.available.assign(static_cast<std::size_t>(instance.num_vertices()), 0);
    for (int c = 1; c < instance.num_vertices(); ++c)
        r.available[static_cast<std::size_t>(c)] =
            rng.next_double() < instance.stations[static_cast<std::size_t>(c)].p ? 1 : 0;
    return r;
}

std::pair<double, bool> execute(const SearchPlan& plan, const Realization& realization,
                                const Instance& instance) {
    const auto violations = plan_violations(instance, plan);
    if (!violations.empty())
        throw std::invalid_argument("execute: infeasible plan: " + violations.front());

    const bool waiting = allows_waiting(instance.variant);
    const bool charging = charge_sensitive(instance.variant);
    double cost = 0.0;
    double depleted = 0.0;
    auto charge_time = [&](int c) {
        if (!charging) return 0.0;
        if (instance.energy && !instance.stations[static_cast<std::size_t>(c)].gamma)
            return adjusted_charge_time(instance, depleted, c);
        return instance.effective_gamma(c);
    };

    for (std::size_t i = 1; i < plan.visits.size(); ++i) {
        const int prev = plan.visits[i - 1];
        const int c = plan.visits[i];
        cost += instance.travel[prev][c];
        if (instance.energy) depleted += instance.energy->consumption[prev][c];
        // A station observed occupied stays occupied during the search.
        const bool fresh = std::find(plan.visits.begin(), plan.visits.begin() + i, c) ==
                           plan.visits.begin() + i;
        if (fresh && realization.available[static_cast<std::size_t>(c)]) {
            return {cost + charge_time(c), true};
        }
    }

    const int last = plan.visits.back();
    if (!instance.is_charger(last)) {
        // Degenerate plan that never left the start vertex.
        return {cost + instance.beta_bar, false};
    }
    if (waiting) {
        cost += instance.stations[static_cast<std::size_t>(last)].wait;
        return {cost + charge_time(last), true};
    }
    return {cost + instance.beta_bar, false};
}

MetricsReport run_experiment(const Instance& instance,
                             const std::vector<std::pair<std::string, SearchPlan>>& algorithms,
                             std::uint64_t n_runs, std::uint64_t master_seed) {
    if (n_runs == 0) throw std::invalid_argument("run_experiment: need at least one run");
    if (algorithms.empty()) throw std::invalid_argument("run_experiment: no algorithms given");

    const std::size_t k = algorithms.size();
    MetricsReport report;
    report.runs = n_runs;
    report.master_seed = master_seed;
    report.realized_costs.assign(k, {});
    for (auto& row : report.realized_costs) row.reserve(n_runs);

    std::vector<double> deviation_sum(k, 0.0);
    std::vector<double> cost_sum(k, 0.0);
    std::vector<double> max_cost(k, 0.0);
    std::vector<std::uint64_t> successes(k, 0);

    for (std::uint64_t run = 0; run < n_runs; ++run) {
        const Realization real = draw_realization(instance, master_seed, run);
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> costs(k, 0.0);
        for (std::size_t a = 0; a < k; ++a) {
            auto [cost, success] = execute(algorithms[a].second, real, instance);
            costs[a] = cost;
            cost_sum[a] += cost;
            max_cost[a] = std::max(max_cost[a], cost);
            if (success) ++successes[a];
            report.realized_costs[a].push_back(cost);
            best = std::min(best, cost);
        }
        for (std::size_t a = 0; a < k; ++a) {
            // Deviation term is 0 when an algorithm matches a zero-cost best;
            // a zero best with positive cost falls back to a 1-minute scale.
            if (best <= 0.0) {
                if (costs[a] > 0.0) deviation_sum[a] += costs[a];
            } else {
                deviation_sum[a] += (costs[a] - best) / best;
            }
        }
    }

    double best_max = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) best_max = std::min(best_max, max_cost[a]);

    for (std::size_t a = 0; a < k; ++a) {
        AlgorithmMetrics m;
        m.name = algorithms[a].first;
        m.runs = n_runs;
        m.mean_cost = cost_sum[a] / static_cast<double>(n_runs);
        m.avg_deviation = deviation_sum[a] / static_cast<double>(n_runs);
        m.success_rate = static_cast<double>(successes[a]) / static_cast<double>(n_runs);
        m.max_cost = max_cost[a];
        m.max_deviation = best_max > 0.0 ? max_cost[a] / best_max : (max_cost[a] > 0.0 ? 0.0 : 1.0);
        report.algorithms.push_back(std::move(m));
    }
    return report;
}

} // namespace simulation
} // namespace scps
