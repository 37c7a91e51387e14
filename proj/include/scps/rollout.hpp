#ifndef SCPS_ROLLOUT_HPP
#define SCPS_ROLLOUT_HPP

#include "scps/instance.hpp"
#include "scps/labeling.hpp"

#include <optional>
#include <span>

namespace scps {

struct RolloutConfig {
    // Greedy expansion depth per candidate; empty = expand until forced
    // termination.
    std::optional<int> lookahead;
};

struct RolloutStats {
    int epochs = 0;
    std::uint64_t candidate_evaluations = 0;
    double runtime_ms = 0.0;
};

struct RolloutResult {
    SearchPlan plan;
    CostBreakdown cost;
    RolloutStats stats;
};

namespace rollout {

// Expected cost-to-go of the greedy base policy from the end of `prefix`,
// conditional on the last station being occupied. Expands greedily (lowest
// one-step score, ties to the lowest id) until forced termination or the
// configured lookahead.
double greedy_cost(const Instance& instance, std::span<const int> prefix, double elapsed,
                   const RolloutConfig& config = {});

// One-step lookahead value Q of traveling to `candidate` next:
// Q = t + p~ * gamma + (1 - p~) * greedy_cost(extended prefix).
double q_value(const Instance& instance, std::span<const int> prefix, double elapsed,
               int candidate, const RolloutConfig& config = {});

// Forward rollout: repeatedly take the argmin-Q action until forced
// termination; waiting variants post-process the visit sequence with the
// backward waiting refinement, truncating at the first stage where waiting
// beats continuing.
RolloutResult solve(const Instance& instance, const RolloutConfig& config = {});

// Backward waiting refinement applied to a no-waiting visit sequence;
// returns the (possibly truncated) plan with its terminal wait flag set.
SearchPlan refine_policy(const Instance& instance, const std::vector<int>& visits);

} // namespace rollout

} // namespace scps

#endif // SCPS_ROLLOUT_HPP
