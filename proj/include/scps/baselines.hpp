#ifndef SCPS_BASELINES_HPP
#define SCPS_BASELINES_HPP

#include "scps/instance.hpp"

namespace scps {
namespace baselines {

// Myopic greedy benchmark G: repeatedly append the feasible unvisited station
// minimizing p~ * (t + gamma) + (1 - p~) * (t + beta). In waiting variants
// the search stops early once waiting at the current station beats every
// single-step continuation.
SearchPlan greedy_solve(const Instance& instance);

// Naive benchmark N: always drive to the closest non-visited station; ties
// broken by higher availability, then lower id. Mimics a driver without
// assistance.
SearchPlan naive_solve(const Instance& instance);

// Single-step score used by G (and by the rollout base policy).
double greedy_score(const Instance& instance, std::span<const int> prefix, double elapsed,
                    int candidate);

} // namespace baselines
} // namespace scps

#endif // SCPS_BASELINES_HPP
