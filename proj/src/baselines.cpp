#include "scps/baselines.hpp"

#include "scps/mdp.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace scps {
namespace baselines {

double greedy_score(const Instance& instance, std::span<const int> prefix, double elapsed,
                    int candidate) {
    const int cur = prefix.back();
    const double t = instance.travel[cur][candidate];
    const double p = effective_probability(instance, prefix, candidate, elapsed + t);
    return p * (t + instance.effective_gamma(candidate)) +
           (1.0 - p) * (t + instance.effective_beta(candidate));
}

namespace {

// Unvisited travel candidates from the current prefix.
std::vector<int> fresh_candidates(const Instance& instance, const std::vector<int>& visits,
                                  double elapsed) {
    std::vector<int> out;
    for (const Move& m : feasible_successors(instance, visits, elapsed)) {
        if (m.wait) continue;
        if (std::find(visits.begin(), visits.end(), m.to) != visits.end()) continue;
        out.push_back(m.to);
    }
    return out;
}

} // namespace

SearchPlan greedy_solve(const Instance& instance) {
    SearchPlan plan;
    double elapsed = 0.0;
    while (true) {
        const auto candidates = fresh_candidates(instance, plan.visits, elapsed);
        if (candidates.empty()) break;
        double best_score = std::numeric_limits<double>::infinity();
        int best = -1;
        for (int c : candidates) {
            const double s = greedy_score(instance, plan.visits, elapsed, c);
            if (s < best_score) { // ties keep the lower id (candidates are sorted)
                best_score = s;
                best = c;
            }
        }
        if (allows_waiting(instance.variant) && instance.is_charger(plan.visits.back()) &&
            instance.effective_beta(plan.visits.back()) < best_score) {
            break; // waiting here beats every single-step continuation
        }
        elapsed += instance.travel[plan.visits.back()][best];
        plan.visits.push_back(best);
    }
    plan.wait_at_end = allows_waiting(instance.variant) && instance.is_charger(plan.visits.back());
    return plan;
}

SearchPlan naive_solve(const Instance& instance) {
    SearchPlan plan;
    double elapsed = 0.0;
    while (true) {
        const auto candidates = fresh_candidates(instance, plan.visits, elapsed);
        if (candidates.empty()) break;
        const int cur = plan.visits.back();
        int best = -1;
        for (int c : candidates) {
            if (best < 0) {
                best = c;
                continue;
            }
            const double tc = instance.travel[cur][c];
            const double tb = instance.travel[cur][best];
            if (tc < tb ||
                (tc == tb && instance.stations[static_cast<std::size_t>(c)].p >
                                 instance.stations[static_cast<std::size_t>(best)].p)) {
                best = c; // closest first, ties to higher availability then lower id
            }
        }
        elapsed += instance.travel[cur][best];
        plan.visits.push_back(best);
    }
    plan.wait_at_end = allows_waiting(instance.variant) && instance.is_charger(plan.visits.back());
    return plan;
}

} // namespace baselines
} // namespace scps
