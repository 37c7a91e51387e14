#ifndef SCPS_ORACLE_HPP
#define SCPS_ORACLE_HPP

#include "scps/instance.hpp"
#include "scps/mdp.hpp"

#include <cstdint>

namespace scps {

struct OracleResult {
    SearchPlan best_plan;
    double best_alpha = 0.0;
    std::uint64_t plans_enumerated = 0;
};

namespace oracle {

// Brute-force reference solver: exhaustively enumerates every feasible plan
// under the instance's variant and action space (wait truncations for
// waiting variants, budget-bounded revisits where the action space permits
// them) and returns the expected-cost minimum. Exact by construction; rejects
// instances with more than `max_chargers` chargers.
OracleResult enumerate_optimal(const Instance& instance, int max_chargers = 8);

// Independent expectation oracle: sums probability-weighted realized costs
// over all availability outcome vectors of the plan's visits. Agrees with
// expected_cost within 1e-9 on every feasible plan. Capped at `max_visits`
// charger visits.
double enumerate_outcomes(const SearchPlan& plan, const Instance& instance, int max_visits = 12);

} // namespace oracle
} // namespace scps

#endif // SCPS_ORACLE_HPP
