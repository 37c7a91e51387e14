#include "scps/labeling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "scps/baselines.hpp"

namespace scps {

const char* dominance_mode_name(DominanceMode m) {
    switch (m) {
    case DominanceMode::Exact: return "exact";
    case DominanceMode::Heuristic: return "heuristic";
    case DominanceMode::Sharpened: return "sharpened";
    case DominanceMode::Recovery: return "recovery";
    case DominanceMode::Energy: return "energy";
    }
    return "?";
}

DominanceMode dominance_mode_from_name(const std::string& name) {
    if (name == "exact") return DominanceMode::Exact;
    if (name == "heuristic") return DominanceMode::Heuristic;
    if (name == "sharpened") return DominanceMode::Sharpened;
    if (name == "recovery") return DominanceMode::Recovery;
    if (name == "energy") return DominanceMode::Energy;
    throw std::invalid_argument("unknown dominance mode: " + name);
}

namespace labeling {

namespace {

std::uint64_t visited_mask(const Label& label) {
    std::uint64_t m = 0;
    for (int v : label.path) m |= 1ULL << v;
    return m;
}

bool subset_of(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

// Worst-case usage cost of station c used by the extension condition; with
// the energy extension the charge time can grow up to full depletion.
double worst_case_gamma(const Instance& instance, int c) {
    double g = instance.effective_gamma(c);
    if (instance.energy && charge_sensitive(instance.variant) &&
        !instance.stations[static_cast<std::size_t>(c)].gamma) {
        const Energy& e = *instance.energy;
        if (e.b0 < 1.0) g += (e.b0 - e.b_min) * instance.stations[static_cast<std::size_t>(c)].charge /
                             (1.0 - e.b0);
    }
    return g;
}

// Every station still reachable by l1 shrinks the cost when appended, even
// with the whole remaining budget spent on the arc. Heterogeneous penalties
// void the bound, so the condition conservatively fails there.
bool extension_decreases_cost(const Label& l1, const Instance& instance) {
    if (instance.has_beta_overrides()) return false;
    const double remaining = instance.t_max - l1.t;
    for (int c = 1; c < instance.num_vertices(); ++c) {
        if (!((l1.reachable_unvisited >> c) & 1ULL)) continue;
        const double p = instance.stations[static_cast<std::size_t>(c)].p;
        if (remaining + p * (worst_case_gamma(instance, c) - instance.beta_bar) > 0.0)
            return false;
    }
    return true;
}

bool all_gamma_zero(const Instance& instance) {
    if (charge_sensitive(instance.variant)) {
        for (int c = 1; c < instance.num_vertices(); ++c)
            if (instance.stations[static_cast<std::size_t>(c)].charge != 0.0 &&
                !instance.stations[static_cast<std::size_t>(c)].gamma)
                return false;
    }
    for (const Station& s : instance.stations)
        if (s.gamma && *s.gamma != 0.0) return false;
    return true;
}

// Revisit-set requirement. With the plain waiting semantics a fresh visit is
// at least as good as a revisit, so R2 within R1 or S1 suffices; with
// positive usage costs the fresh-visit substitution is not cost-monotone and
// the requirement tightens to R2 within R1.
bool revisit_set_ok(const Label& l1, const Label& l2, const Instance& instance) {
    if (all_gamma_zero(instance))
        return subset_of(l2.reachable_visited, l1.reachable_visited | l1.reachable_unvisited);
    return subset_of(l2.reachable_visited, l1.reachable_visited);
}

double delta_since_visit(const Label& label, int c) {
    const double last = label.last_arrival[static_cast<std::size_t>(c)];
    return last < 0.0 ? std::numeric_limits<double>::infinity() : label.t - last;
}

// Revisit-probability ratio condition for the recovery setting, taken at the
// per-station worst case over future revisit times (ratio clamped at 1).
bool recovery_ratio_ok(const Label& l1, const Label& l2, const Instance& instance) {
    if (l2.rho_bar <= 0.0) return l1.rho_bar <= 0.0;
    double bound = 1.0;
    for (int c = 1; c < instance.num_vertices(); ++c) {
        if (!((l1.reachable_visited >> c) & 1ULL)) continue;
        const Station& st = instance.stations[static_cast<std::size_t>(c)];
        if (!st.mu_inv) continue;
        const double d1 = delta_since_visit(l1, c);
        const double d2 = delta_since_visit(l2, c);
        const double free1 = 1.0 - recovery_probability(st.p, *st.mu_inv, d1);
        const double free2 =
            std::isinf(d2) ? 1.0 - st.p : 1.0 - recovery_probability(st.p, *st.mu_inv, d2);
        if (free1 > free2 && free2 > 0.0) bound *= free2 / free1;
    }
    return l1.rho_bar <= l2.rho_bar * bound;
}

bool recovery_profiles_equal(const Label& l1, const Label& l2, const Instance& instance) {
    if (l1.reachable_visited != l2.reachable_visited) return false;
    for (int c = 1; c < instance.num_vertices(); ++c) {
        if (!((l1.reachable_visited >> c) & 1ULL)) continue;
        if (std::abs(delta_since_visit(l1, c) - delta_since_visit(l2, c)) > 1e-12) return false;
    }
    return true;
}

// Bound-based trade-off between cost and failure probability. For waiting
// variants the heterogeneous station penalties admit short completions the
// printed bound does not cover, hence the two extra guards.
bool sharpened_tradeoff(const Label& l1, const Label& l2, const Instance& instance) {
    const double p_upper = instance.max_charger_p();
    const double t_lower = instance.min_charger_travel();
    if (!(p_upper < 1.0) || !(t_lower > 0.0) || !std::isfinite(t_lower)) return false;
    double beta_max = 0.0;
    double gamma_min = 0.0;
    switch (instance.variant) {
    case Variant::A: beta_max = instance.beta_bar; break;
    case Variant::B: beta_max = instance.max_wait(); break;
    case Variant::C:
        beta_max = instance.beta_bar;
        gamma_min = instance.min_charge();
        break;
    case Variant::D:
        beta_max = instance.max_wait() + instance.max_charge();
        gamma_min = instance.min_charge();
        break;
    }
    if (instance.has_beta_overrides()) return false;
    const double d_alpha = l1.alpha - l2.alpha;
    const double d_rho_bar = l1.rho_bar - l2.rho_bar;
    if (p_upper * d_alpha > (-d_rho_bar) * (t_lower + p_upper * (gamma_min - beta_max)))
        return false;
    if (allows_waiting(instance.variant)) {
        const double beta_here = instance.effective_beta(l1.last());
        if (d_alpha > 0.0) return false;
        if (d_alpha > d_rho_bar * (beta_here - t_lower)) return false;
    }
    return true;
}

} // namespace

Label root_label(const Instance& instance) {
    Label root;
    root.path = {0};
    root.t = 0.0;
    root.partial_cost = 0.0;
    root.rho_bar = 1.0;
    root.alpha = instance.effective_beta(0);
    root.soc = instance.energy ? instance.energy->b0 : 1.0;
    for (int c = 1; c < instance.num_vertices(); ++c) {
        const bool time_ok = instance.travel[0][c] <= instance.t_max;
        const bool energy_ok = !instance.energy ||
                               root.soc - instance.energy->consumption[0][c] >=
                                   instance.energy->b_min;
        if (time_ok && energy_ok) root.reachable_unvisited |= 1ULL << c;
    }
    if (instance.recovery)
        root.last_arrival.assign(static_cast<std::size_t>(instance.num_vertices()), -1.0);
    return root;
}

Label extend(const Label& label, int to, const Instance& instance) {
    const int from = label.last();
    const double arc = instance.travel[from][to];
    if (label.t + arc > instance.t_max + 1e-12)
        throw std::invalid_argument("extend: time budget exceeded");

    Label next;
    next.path = label.path;
    next.path.push_back(to);
    next.t = label.t + arc;
    next.soc = label.soc;
    if (instance.energy) {
        next.soc -= instance.energy->consumption[from][to];
        if (next.soc < instance.energy->b_min - 1e-12)
            throw std::invalid_argument("extend: state of charge below minimum");
    }

    double p_tilde;
    const std::uint64_t seen = visited_mask(label);
    const Station& st = instance.stations[static_cast<std::size_t>(to)];
    if (!((seen >> to) & 1ULL)) {
        p_tilde = st.p;
    } else if (instance.recovery) {
        if (!st.mu_inv) throw std::invalid_argument("extend: recovery requires mu_inv");
        p_tilde = recovery_probability(st.p, *st.mu_inv, next.t - label.last_arrival[to]);
    } else {
        p_tilde = 0.0;
    }

    double gamma = instance.effective_gamma(to);
    double beta = instance.effective_beta(to);
    if (instance.energy && charge_sensitive(instance.variant)) {
        const double depleted = instance.energy->b0 - next.soc;
        if (!st.gamma) gamma = adjusted_charge_time(instance, depleted, to);
        if (instance.variant == Variant::D && !st.beta)
            beta = st.wait + adjusted_charge_time(instance, depleted, to);
    }

    next.partial_cost = label.partial_cost + label.rho_bar * (arc + p_tilde * gamma);
    next.rho_bar = label.rho_bar * (1.0 - p_tilde);
    next.alpha = next.partial_cost + next.rho_bar * beta;

    auto still_reachable = [&](int d) {
        if (next.t + instance.travel[to][d] > instance.t_max) return false;
        if (instance.energy &&
            next.soc - instance.energy->consumption[to][d] < instance.energy->b_min)
            return false;
        return true;
    };
    next.reachable_unvisited = 0;
    next.reachable_visited = 0;
    for (int d = 1; d < instance.num_vertices(); ++d) {
        const std::uint64_t bit = 1ULL << d;
        const bool was_s = label.reachable_unvisited & bit;
        const bool was_r = label.reachable_visited & bit;
        if (d == to) {
            if (still_reachable(d)) next.reachable_visited |= bit;
            continue;
        }
        if (was_s && still_reachable(d)) next.reachable_unvisited |= bit;
        if (was_r && still_reachable(d)) next.reachable_visited |= bit;
    }

    if (instance.recovery) {
        next.last_arrival = label.last_arrival;
        next.last_arrival[static_cast<std::size_t>(to)] = next.t;
    }
    return next;
}

bool dominates(const Label& l1, const Label& l2, DominanceMode mode, const Instance& instance) {
    DominanceToggles toggles;
    if (mode == DominanceMode::Heuristic) {
        toggles.driving_time = false;
        toggles.unvisited_set = false;
        toggles.extension_set = false;
    }
    return dominates(l1, l2, mode, instance, toggles);
}

bool dominates(const Label& l1, const Label& l2, DominanceMode mode, const Instance& instance,
               const DominanceToggles& toggles) {
    if (l1.last() != l2.last())
        throw std::invalid_argument("dominates: labels must end at the same station");

    if (toggles.failure_probability && !(l1.rho_bar <= l2.rho_bar)) return false;

    bool partial_ok = !toggles.partial_cost || l1.partial_cost <= l2.partial_cost;
    if (mode == DominanceMode::Sharpened) {
        if (!partial_ok) partial_ok = sharpened_tradeoff(l1, l2, instance);
    }
    if (!partial_ok) return false;

    if (mode == DominanceMode::Heuristic) return true;

    if (toggles.driving_time && !(l1.t <= l2.t)) return false;
    if (toggles.unvisited_set && !subset_of(l2.reachable_unvisited, l1.reachable_unvisited))
        return false;

    if (toggles.extension_set) {
        if (mode == DominanceMode::Recovery) {
            if (!revisit_set_ok(l1, l2, instance)) return false;
            if (all_gamma_zero(instance)) {
                if (!recovery_ratio_ok(l1, l2, instance)) return false;
            } else {
                if (!recovery_profiles_equal(l1, l2, instance)) return false;
            }
        } else if (allows_waiting(instance.variant)) {
            if (!revisit_set_ok(l1, l2, instance)) return false;
        } else {
            if (!extension_decreases_cost(l1, instance)) return false;
            if (instance.action_space.kind == ActionSpaceKind::DirectNeighbors &&
                !revisit_set_ok(l1, l2, instance))
                return false;
        }
    }

    if (mode == DominanceMode::Energy) {
        if (!(l1.soc >= l2.soc)) return false;
    }
    return true;
}

namespace {

struct FrontierEntry {
    double alpha;
    std::uint64_t serial;
    std::size_t index;
    bool operator>(const FrontierEntry& other) const {
        if (alpha != other.alpha) return alpha > other.alpha;
        return serial > other.serial;
    }
};

struct Incumbent {
    double alpha = std::numeric_limits<double>::infinity();
    SearchPlan plan;

    void offer(double a, SearchPlan p) {
        if (a < alpha) {
            alpha = a;
            plan = std::move(p);
        }
    }
};

} // namespace

SolveResult solve(const Instance& instance, DominanceMode mode,
                  std::optional<double> time_limit_seconds) {
    using clock = std::chrono::steady_clock;
    const auto t_start = clock::now();
    if (instance.num_vertices() > 64)
        throw std::invalid_argument("labeling::solve: at most 64 vertices supported");
    if (mode == DominanceMode::Recovery && !instance.recovery)
        throw std::invalid_argument("labeling::solve: recovery dominance needs recovery enabled");
    if (instance.recovery && mode != DominanceMode::Recovery && mode != DominanceMode::Heuristic)
        throw std::invalid_argument(
            "labeling::solve: recovery-enabled instances need recovery or heuristic dominance");
    if (mode == DominanceMode::Energy && !instance.energy)
        throw std::invalid_argument("labeling::solve: energy dominance needs the energy extension");

    const bool waiting = allows_waiting(instance.variant);
    const bool needs_neighbors =
        instance.action_space.kind == ActionSpaceKind::DirectNeighbors ||
        instance.action_space.kind == ActionSpaceKind::DirectNeighborsRestricted;
    std::vector<std::vector<bool>> neighbors;
    if (needs_neighbors) neighbors = neighbor_matrix(instance);
    const auto* neighbor_ptr = needs_neighbors ? &neighbors : nullptr;

    SolveStats stats;
    Incumbent incumbent;

    std::vector<Label> pool;
    std::vector<bool> alive;
    std::vector<std::vector<std::size_t>> active_at(
        static_cast<std::size_t>(instance.num_vertices()));
    std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, std::greater<FrontierEntry>>
        frontier;
    std::uint64_t serial = 0;
    std::size_t alive_count = 0;

    // Terminal candidates are recorded when a label is created (wait moves and
    // forced termination); only labels with travel moves enter the frontier.
    auto offer_candidates = [&](const Label& label, const std::vector<Move>& moves) -> bool {
        bool has_travel = false;
        for (const Move& m : moves) {
            if (!m.wait) {
                has_travel = true;
                continue;
            }
            const double arc = instance.travel[label.last()][m.to];
            double beta = instance.effective_beta(m.to);
            if (instance.energy && instance.variant == Variant::D &&
                !instance.stations[static_cast<std::size_t>(m.to)].beta) {
                const double depleted = instance.energy->b0 - label.soc +
                                        instance.energy->consumption[label.last()][m.to];
                beta = instance.stations[static_cast<std::size_t>(m.to)].wait +
                       adjusted_charge_time(instance, depleted, m.to);
            }
            const double alpha = label.partial_cost + label.rho_bar * (arc + beta);
            SearchPlan plan;
            plan.visits = label.path;
            if (m.to != label.last()) plan.visits.push_back(m.to);
            plan.wait_at_end = true;
            incumbent.offer(alpha, std::move(plan));
        }
        if (moves.empty() || (!waiting && !has_travel)) {
            SearchPlan plan;
            plan.visits = label.path;
            plan.wait_at_end = waiting && instance.is_charger(label.last());
            incumbent.offer(label.alpha, std::move(plan));
        }
        return has_travel;
    };

    auto push_label = [&](Label&& label) {
        const auto moves = successor_moves(instance, label.last(), visited_mask(label), label.t,
                                           label.soc, neighbor_ptr);
        if (!offer_candidates(label, moves)) return;
        const int station = label.last();
        auto& actives = active_at[static_cast<std::size_t>(station)];
        for (std::size_t idx : actives) {
            if (!alive[idx]) continue;
            if (dominates(pool[idx], label, mode, instance)) {
                ++stats.labels_dominated;
                return;
            }
        }
        std::erase_if(actives, [&](std::size_t idx) {
            if (!alive[idx]) return true;
            if (dominates(label, pool[idx], mode, instance)) {
                alive[idx] = false;
                --alive_count;
                ++stats.labels_dominated;
                return true;
            }
            return false;
        });
        const std::size_t index = pool.size();
        pool.push_back(std::move(label));
        alive.push_back(true);
        ++alive_count;
        actives.push_back(index);
        frontier.push({pool[index].alpha, serial++, index});
        stats.peak_frontier = std::max(stats.peak_frontier, static_cast<std::uint64_t>(alive_count));
    };

    Label root = root_label(instance);
    {
        const auto root_moves =
            successor_moves(instance, 0, 1ULL, root.t, root.soc, neighbor_ptr);
        if (root_moves.empty()) {
            // No reachable charger at all: degenerate plan that stays home.
            SearchPlan plan;
            incumbent.offer(instance.effective_beta(0), std::move(plan));
        } else {
            push_label(std::move(root));
        }
    }

    std::uint64_t pops = 0;
    while (!frontier.empty()) {
        if (time_limit_seconds && (pops & 0x3ff) == 0) {
            const double elapsed_s =
                std::chrono::duration<double>(clock::now() - t_start).count();
            if (elapsed_s > *time_limit_seconds) {
                stats.truncated = true;
                break;
            }
        }
        ++pops;
        const FrontierEntry top = frontier.top();
        frontier.pop();
        if (!alive[top.index]) continue;
        alive[top.index] = false;
        --alive_count;
        const Label label = pool[top.index];

        const auto moves = successor_moves(instance, label.last(), visited_mask(label), label.t,
                                           label.soc, neighbor_ptr);
        for (const Move& m : moves) {
            if (m.wait) continue; // handled when the label was created
            Label next = extend(label, m.to, instance);
            ++stats.labels_created;
            push_label(std::move(next));
        }
    }

    if (!std::isfinite(incumbent.alpha)) {
        // Time limit expired before any terminal label appeared; fall back to
        // the myopic plan so a feasible incumbent is always returned.
        SearchPlan fallback = baselines::greedy_solve(instance);
        incumbent.offer(expected_cost(fallback, instance).alpha, std::move(fallback));
    }

    SolveResult result;
    result.plan = incumbent.plan;
    result.cost = decompose(incumbent.plan, instance);
    result.stats = stats;
    result.stats.runtime_ms =
        std::chrono::duration<double, std::milli>(clock::now() - t_start).count();
    return result;
}

} // namespace labeling
} // namespace scps
