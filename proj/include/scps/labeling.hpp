#ifndef SCPS_LABELING_HPP
#define SCPS_LABELING_HPP

#include "scps/instance.hpp"
#include "scps/mdp.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace scps {

// Dominance rule selection for the labeling algorithms.
//   Exact      - full criterion (resource conditions plus the reachable-set
//                checks); guarantees optimality.
//   Heuristic  - failure-probability and partial-cost conditions only (LH).
//   Sharpened  - Exact augmented by the bound-based trade-off between
//                cost and failure probability (needs t_lower > 0, p_upper < 1).
//   Recovery   - Exact plus the revisit-probability ratio condition.
//   Energy     - Exact plus the state-of-charge condition.
enum class DominanceMode { Exact, Heuristic, Sharpened, Recovery, Energy };

const char* dominance_mode_name(DominanceMode m);
DominanceMode dominance_mode_from_name(const std::string& name);

// Individual dominance condition toggles, exposed for reproduction studies of
// heuristic criteria. The quintuple follows the order (failure probability,
// partial cost, driving time, unvisited reachable set, extension/revisit set).
struct DominanceToggles {
    bool failure_probability = true;
    bool partial_cost = true;
    bool driving_time = true;
    bool unvisited_set = true;
    bool extension_set = true;
};

struct Label {
    std::vector<int> path;      // visit sequence, path[0] == 0
    double t = 0.0;             // accumulated driving time
    double partial_cost = 0.0;  // A
    double rho_bar = 1.0;       // failure probability
    double alpha = 0.0;         // A + rho_bar * beta(last)
    std::uint64_t reachable_unvisited = 0; // S, bitset over station ids
    std::uint64_t reachable_visited = 0;   // R, bitset over station ids
    double soc = 1.0;                      // energy extension only
    std::vector<double> last_arrival;      // recovery only: arrival of last visit per station

    int last() const { return path.back(); }
};

struct SolveStats {
    std::uint64_t labels_created = 0;
    std::uint64_t labels_dominated = 0;
    std::uint64_t peak_frontier = 0;
    double runtime_ms = 0.0;
    bool truncated = false;
};

struct SolveResult {
    SearchPlan plan;
    CostBreakdown cost;
    SolveStats stats;
};

namespace labeling {

// Root label at the start vertex (A = 0, rho_bar = 1, t = 0).
Label root_label(const Instance& instance);

// Resource extension along arc (label.last(), to). Throws when the budget
// (or minimum state of charge) would be exceeded.
Label extend(const Label& label, int to, const Instance& instance);

// True when l1 dominates l2 under `mode`. Both labels must end at the same
// station; all comparisons are <=, so equal labels dominate each other.
bool dominates(const Label& l1, const Label& l2, DominanceMode mode, const Instance& instance);

// Variant with explicit condition toggles (Heuristic mode semantics ignore
// the toggles and always use the (failure, partial-cost) pair).
bool dominates(const Label& l1, const Label& l2, DominanceMode mode, const Instance& instance,
               const DominanceToggles& toggles);

// Label-setting solve. Exact/Sharpened/Recovery/Energy modes return an
// expected-cost-minimal plan; Heuristic mode (and any time-capped run)
// returns a feasible plan with cost >= the optimum and sets stats.truncated
// when the limit expired.
SolveResult solve(const Instance& instance, DominanceMode mode,
                  std::optional<double> time_limit_seconds = std::nullopt);

} // namespace labeling

} // namespace scps

#endif // SCPS_LABELING_HPP
