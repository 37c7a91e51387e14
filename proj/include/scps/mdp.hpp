#ifndef SCPS_MDP_HPP
#define SCPS_MDP_HPP

#include "scps/instance.hpp"

#include <optional>
#include <span>

namespace scps {

// Expected-cost decomposition of a plan. The identities
//   alpha = partial_cost + rho_bar * beta(last)
//   alpha = success_time * rho + rho_bar * (travel_time + beta(last))
// hold for every feasible plan (the second needs rho > 0 for success_time
// to be defined).
struct CostBreakdown {
    double alpha = 0.0;        // total expected cost [min]
    double partial_cost = 0.0; // A(pi), cost excluding the terminal penalty term
    double rho = 0.0;          // probability the search succeeds
    double rho_bar = 1.0;      // probability the search fails
    double travel_time = 0.0;  // accumulated driving time t(pi) [min]
    std::optional<double> success_time; // t^s(pi), expected time-to-success given success
};

// Availability recovery r_c(delta) = p * (1 - exp(-(mu/p) * delta)).
double recovery_probability(double p, double mu_inv, double delta);

// Visit-history-adjusted availability of `candidate` when reached at
// `arrival_time` after traversing `prefix`: p_c on a first visit, 0 on a
// revisit without recovery, r_c(delta) with recovery.
double effective_probability(const Instance& instance, std::span<const int> prefix, int candidate,
                             double arrival_time);

// Immediate induced cost d(x, u) for taking action (next, wait) at `current`
// with realized availability `available`.
double immediate_cost(const Instance& instance, int current, bool available, int next, bool wait);

// Expected cost of a plan, evaluated both by backward recursion and by the
// closed-form expansion; the two routes must agree within 1e-9 or a
// std::logic_error is thrown. Infeasible plans raise std::invalid_argument.
CostBreakdown expected_cost(const SearchPlan& plan, const Instance& instance);

// Same as expected_cost but additionally populates success_time and verifies
// the decomposition identity. success_time stays empty when rho == 0.
CostBreakdown decompose(const SearchPlan& plan, const Instance& instance);

// Charging duration corrected for battery depletion during the search:
// L' = L_c + depleted * L_c / (1 - b0), linear charge-curve proration.
double adjusted_charge_time(const Instance& instance, double depleted, int station);

namespace detail {

// Per-visit effective probabilities, arrival times and (energy-adjusted)
// usage costs along a plan; shared by the evaluation routes and the oracle.
struct PlanTrace {
    std::vector<double> p_tilde;   // per visit, index aligned with plan.visits
    std::vector<double> arrival;   // cumulative travel time at each visit
    std::vector<double> gamma;     // effective usage cost at each visit
    double terminal_beta = 0.0;    // effective penalty at the last visit
};

PlanTrace trace_plan(const SearchPlan& plan, const Instance& instance);

} // namespace detail

} // namespace scps

#endif // SCPS_MDP_HPP
