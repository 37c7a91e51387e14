#include "scps/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace scps {
namespace oracle {

namespace {

struct Enumerator {
    const Instance& instance;
    OracleResult result;
    std::vector<int> visits{0};
    double elapsed = 0.0;
    double soc = 1.0;
    std::uint64_t visited = 1;
    std::uint64_t nodes = 0;
    static constexpr std::uint64_t kNodeCap = 50'000'000;

    explicit Enumerator(const Instance& inst) : instance(inst) {
        soc = inst.energy ? inst.energy->b0 : 1.0;
        result.best_alpha = std::numeric_limits<double>::infinity();
    }

    void consider(const SearchPlan& plan) {
        const double alpha = expected_cost(plan, instance).alpha;
        ++result.plans_enumerated;
        if (alpha < result.best_alpha) {
            result.best_alpha = alpha;
            result.best_plan = plan;
        }
    }

    // Admissible lower bound on the final cost of any completion: the partial
    // cost only grows, the failure probability cannot drop below the product
    // over all still-unvisited reachable chargers (0 under recovery, where
    // revisits keep reducing it), and the terminal penalty is at least the
    // smallest effective penalty of any charger.
    bool prunable(double partial, double rho_bar) {
        if (!std::isfinite(result.best_alpha)) return false;
        double rho_lb = instance.recovery ? 0.0 : rho_bar;
        double beta_min = instance.effective_beta(visits.back());
        for (int c = 1; c < instance.num_vertices(); ++c) {
            beta_min = std::min(beta_min, instance.effective_beta(c));
            if ((visited >> c) & 1ULL) continue;
            if (!instance.recovery &&
                elapsed + instance.travel[visits.back()][c] <= instance.t_max)
                rho_lb *= 1.0 - instance.stations[static_cast<std::size_t>(c)].p;
        }
        return partial + rho_lb * std::max(0.0, beta_min) >= result.best_alpha;
    }

    void walk(double partial, double rho_bar) {
        if (++nodes > kNodeCap)
            throw std::runtime_error("oracle: enumeration node cap exceeded");
        const auto moves = successor_moves(instance, visits.back(), visited, elapsed, soc, nullptr);

        bool has_travel = false;
        for (const Move& m : moves) {
            if (m.wait) {
                SearchPlan plan;
                plan.visits = visits;
                if (m.to != visits.back()) plan.visits.push_back(m.to);
                plan.wait_at_end = true;
                consider(plan);
            } else {
                has_travel = true;
            }
        }
        if (!has_travel) {
            if (!allows_waiting(instance.variant) || !instance.is_charger(visits.back()) ||
                moves.empty()) {
                SearchPlan plan;
                plan.visits = visits;
                plan.wait_at_end =
                    allows_waiting(instance.variant) && instance.is_charger(visits.back());
                consider(plan);
            }
            if (moves.empty()) return;
        }
        if (prunable(partial, rho_bar)) return;

        for (const Move& m : moves) {
            if (m.wait) continue;
            const double arc = instance.travel[visits.back()][m.to];
            const double arrival = elapsed + arc;
            const double p = effective_probability(instance, visits, m.to, arrival);

            visits.push_back(m.to);
            const double saved_elapsed = elapsed;
            const double saved_soc = soc;
            const std::uint64_t saved_visited = visited;
            elapsed = arrival;
            if (instance.energy) soc -= instance.energy->consumption[visits[visits.size() - 2]][m.to];
            visited |= 1ULL << m.to;

            double gamma = instance.effective_gamma(m.to);
            if (instance.energy && charge_sensitive(instance.variant) &&
                !instance.stations[static_cast<std::size_t>(m.to)].gamma)
                gamma = adjusted_charge_time(instance, instance.energy->b0 - soc, m.to);
            walk(partial + rho_bar * (arc + p * gamma), rho_bar * (1.0 - p));

            visits.pop_back();
            elapsed = saved_elapsed;
            soc = saved_soc;
            visited = saved_visited;
        }
    }
};

} // namespace

OracleResult enumerate_optimal(const Instance& instance, int max_chargers) {
    if (instance.num_chargers() > max_chargers) {
        std::ostringstream msg;
        msg << "enumerate_optimal: " << instance.num_chargers() << " chargers exceed the cap of "
            << max_chargers;
        throw std::invalid_argument(msg.str());
    }
    if (instance.num_vertices() > 64)
        throw std::invalid_argument("enumerate_optimal: at most 64 vertices supported");
    Enumerator e(instance);
    const auto root_moves = successor_moves(instance, 0, 1ULL, 0.0, e.soc, nullptr);
    if (root_moves.empty()) {
        e.consider(SearchPlan{});
    } else {
        e.walk(0.0, 1.0);
    }
    return e.result;
}

double enumerate_outcomes(const SearchPlan& plan, const Instance& instance, int max_visits) {
    const auto violations = plan_violations(instance, plan);
    if (!violations.empty())
        throw std::invalid_argument("enumerate_outcomes: infeasible plan: " + violations.front());
    const int m = static_cast<int>(plan.visits.size()) - 1;
    if (m > max_visits)
        throw std::invalid_argument("enumerate_outcomes: too many visits for outcome enumeration");
    const auto tr = detail::trace_plan(plan, instance);

    // Sum realized costs over all availability outcome vectors of the charger
    // visits; each visit is an independent draw with its effective
    // probability (forced to 0 on revisits without recovery). The cost of an
    // outcome vector is decided by its first available visit.
    double total = 0.0;
    const std::uint64_t combos = 1ULL << m;
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        double weight = 1.0;
        for (int i = 1; i <= m; ++i) {
            const double p = tr.p_tilde[static_cast<std::size_t>(i)];
            weight *= ((mask >> (i - 1)) & 1ULL) ? p : 1.0 - p;
        }
        if (weight == 0.0) continue;
        double cost = 0.0;
        bool settled = false;
        for (int i = 1; i <= m; ++i) {
            cost += instance.travel[plan.visits[static_cast<std::size_t>(i) - 1]]
                                   [plan.visits[static_cast<std::size_t>(i)]];
            if ((mask >> (i - 1)) & 1ULL) {
                cost += tr.gamma[static_cast<std::size_t>(i)];
                settled = true;
                break;
            }
        }
        if (!settled) cost += tr.terminal_beta;
        total += weight * cost;
    }
    return total;
}

} // namespace oracle
} // namespace scps
