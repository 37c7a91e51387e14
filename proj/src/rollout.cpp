#include "scps/rollout.hpp"

#include "scps/baselines.hpp"
#include "scps/mdp.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <vector>

namespace scps {
namespace rollout {

namespace {

std::vector<int> travel_targets(const Instance& instance, const std::vector<int>& prefix,
                                double elapsed) {
    std::vector<int> out;
    for (const Move& m : feasible_successors(instance, prefix, elapsed))
        if (!m.wait) out.push_back(m.to);
    return out;
}

} // namespace

double greedy_cost(const Instance& instance, std::span<const int> prefix, double elapsed,
                   const RolloutConfig& config) {
    std::vector<int> seq(prefix.begin(), prefix.end());
    double t = elapsed;

    // Greedy forward expansion.
    std::vector<int> expansion;
    int depth = 0;
    while (!config.lookahead || depth < *config.lookahead) {
        const auto candidates = travel_targets(instance, seq, t);
        if (candidates.empty()) break;
        double best_score = std::numeric_limits<double>::infinity();
        int best = -1;
        for (int c : candidates) {
            const double s = baselines::greedy_score(instance, seq, t, c);
            if (s < best_score) {
                best_score = s;
                best = c;
            }
        }
        t += instance.travel[seq.back()][best];
        seq.push_back(best);
        expansion.push_back(best);
        ++depth;
    }

    // Backward value of the expansion, conditional on the prefix's last
    // station being occupied.
    std::vector<int> walk(prefix.begin(), prefix.end());
    double walk_t = elapsed;
    std::vector<double> p_tilde;
    for (int c : expansion) {
        walk_t += instance.travel[walk.back()][c];
        p_tilde.push_back(effective_probability(instance, walk, c, walk_t));
        walk.push_back(c);
    }
    double value = instance.effective_beta(walk.back());
    for (std::size_t i = expansion.size(); i-- > 0;) {
        const int from = i == 0 ? prefix.back() : expansion[i - 1];
        value = instance.travel[from][expansion[i]] +
                p_tilde[i] * instance.effective_gamma(expansion[i]) + (1.0 - p_tilde[i]) * value;
    }
    return value;
}

double q_value(const Instance& instance, std::span<const int> prefix, double elapsed,
               int candidate, const RolloutConfig& config) {
    const int cur = prefix.back();
    const double arc = instance.travel[cur][candidate];
    const double p = effective_probability(instance, prefix, candidate, elapsed + arc);
    std::vector<int> next(prefix.begin(), prefix.end());
    next.push_back(candidate);
    const double v = greedy_cost(instance, next, elapsed + arc, config);
    return arc + (1.0 - p) * v + p * instance.effective_gamma(candidate);
}

SearchPlan refine_policy(const Instance& instance, const std::vector<int>& visits) {
    if (!allows_waiting(instance.variant))
        throw std::invalid_argument("refine_policy: only defined for waiting variants");
    const std::size_t n = visits.size();
    SearchPlan plan;
    plan.visits = visits;
    plan.wait_at_end = instance.is_charger(visits.back());
    if (n <= 1) return plan;

    // Per-visit effective probabilities along the sequence.
    std::vector<double> p_tilde(n, 0.0);
    std::vector<int> walk{visits.front()};
    double t = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        t += instance.travel[visits[i - 1]][visits[i]];
        p_tilde[i] = effective_probability(instance, walk, visits[i], t);
        walk.push_back(visits[i]);
    }

    // Backward pass: value of the refined policy at each stage, conditional
    // on the stage's station being occupied.
    std::vector<double> value(n, 0.0);
    std::vector<bool> wait_here(n, false);
    value[n - 1] = instance.effective_beta(visits[n - 1]);
    wait_here[n - 1] = true;
    for (std::size_t k = n - 1; k-- > 0;) {
        const double cont = instance.travel[visits[k]][visits[k + 1]] +
                            p_tilde[k + 1] * instance.effective_gamma(visits[k + 1]) +
                            (1.0 - p_tilde[k + 1]) * value[k + 1];
        if (instance.is_charger(visits[k])) {
            const double stop = instance.effective_beta(visits[k]);
            wait_here[k] = stop < cont;
            value[k] = std::min(stop, cont);
        } else {
            value[k] = cont;
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (wait_here[k]) {
            plan.visits.assign(visits.begin(), visits.begin() + static_cast<std::ptrdiff_t>(k) + 1);
            plan.wait_at_end = true;
            break;
        }
    }
    return plan;
}

RolloutResult solve(const Instance& instance, const RolloutConfig& config) {
    using clock = std::chrono::steady_clock;
    const auto t_start = clock::now();

    RolloutStats stats;
    std::vector<int> visits{0};
    double elapsed = 0.0;
    while (true) {
        const auto candidates = travel_targets(instance, visits, elapsed);
        if (candidates.empty()) break;
        double best_q = std::numeric_limits<double>::infinity();
        int best = -1;
        for (int c : candidates) {
            const double q = q_value(instance, visits, elapsed, c, config);
            ++stats.candidate_evaluations;
            if (q < best_q) { // ties keep the lower id
                best_q = q;
                best = c;
            }
        }
        elapsed += instance.travel[visits.back()][best];
        visits.push_back(best);
        ++stats.epochs;
    }

    SearchPlan plan;
    if (allows_waiting(instance.variant) && visits.size() > 1) {
        plan = refine_policy(instance, visits);
    } else {
        plan.visits = visits;
        plan.wait_at_end = allows_waiting(instance.variant) && instance.is_charger(visits.back());
    }

    RolloutResult result;
    result.plan = plan;
    result.cost = decompose(plan, instance);
    result.stats = stats;
    result.stats.runtime_ms =
        std::chrono::duration<double, std::milli>(clock::now() - t_start).count();
    return result;
}

} // namespace rollout
} // namespace scps
