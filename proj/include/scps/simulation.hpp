#ifndef SCPS_SIMULATION_HPP
#define SCPS_SIMULATION_HPP

#include "scps/instance.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace scps {

// One sampled availability outcome per charger; persistent during a run.
struct Realization {
    std::vector<std::uint8_t> available; // indexed by station id, entry 0 unused
    std::uint64_t seed = 0;
};

struct AlgorithmMetrics {
    std::string name;
    double mean_cost = 0.0;      // mean realized search cost [min]
    double avg_deviation = 0.0;  // mean of (cost_i - best_i) / best_i
    double success_rate = 0.0;
    double max_cost = 0.0;
    double max_deviation = 0.0;  // max_cost / best max_cost over all algorithms
    std::uint64_t runs = 0;
};

struct MetricsReport {
    std::vector<AlgorithmMetrics> algorithms;
    std::uint64_t runs = 0;
    std::uint64_t master_seed = 0;
    // Raw per-run realized costs, row per algorithm (exported for external
    // statistical analysis).
    std::vector<std::vector<double>> realized_costs;
};

namespace simulation {

Realization draw_realization(const Instance& instance, std::uint64_t master_seed,
                             std::uint64_t run_index);

// Walks the plan under a fixed realization. Returns the realized search cost
// and whether the search ended at a free (or waited-for) charging spot.
std::pair<double, bool> execute(const SearchPlan& plan, const Realization& realization,
                                const Instance& instance);

// Paired Monte-Carlo comparison: each run draws one realization shared by all
// plans. Deterministic given master_seed.
MetricsReport run_experiment(const Instance& instance,
                             const std::vector<std::pair<std::string, SearchPlan>>& algorithms,
                             std::uint64_t n_runs, std::uint64_t master_seed);

} // namespace simulation
} // namespace scps

#endif // SCPS_SIMULATION_HPP
