#include "scps/mdp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace scps {

double recovery_probability(double p, double mu_inv, double delta) {
    if (p <= 0.0) return 0.0;
    if (mu_inv <= 0.0) throw std::invalid_argument("recovery_probability: mu_inv must be > 0");
    const double mu = 1.0 / mu_inv;
    return p * (1.0 - std::exp(-(mu / p) * delta));
}

double effective_probability(const Instance& instance, std::span<const int> prefix, int candidate,
                             double arrival_time) {
    if (!instance.is_charger(candidate))
        throw std::invalid_argument("effective_probability: candidate must be a charger");
    const Station& st = instance.stations[static_cast<std::size_t>(candidate)];
    // Arrival time of the most recent visit to `candidate` within the prefix.
    double last_arrival = -1.0;
    double t = 0.0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (i > 0) t += instance.travel[prefix[i - 1]][prefix[i]];
        if (prefix[i] == candidate) last_arrival = t;
    }
    if (last_arrival < 0.0) return st.p;
    if (!instance.recovery) {
        if (!allows_waiting(instance.variant) &&
            instance.action_space.kind != ActionSpaceKind::DirectNeighbors)
            throw std::invalid_argument(
                "effective_probability: revisit without recovery in a no-waiting variant");
        return 0.0;
    }
    if (!st.mu_inv)
        throw std::invalid_argument("effective_probability: recovery requires mu_inv");
    return recovery_probability(st.p, *st.mu_inv, arrival_time - last_arrival);
}

double immediate_cost(const Instance& instance, int current, bool available, int next, bool wait) {
    const double a = available ? 1.0 : 0.0;
    const double w = wait ? 1.0 : 0.0;
    return (1.0 - a) * w * instance.effective_beta(current) +
           a * instance.effective_gamma(current) +
           (1.0 - w) * (1.0 - a) * instance.travel[current][next];
}

double adjusted_charge_time(const Instance& instance, double depleted, int station) {
    if (!instance.energy)
        throw std::invalid_argument("adjusted_charge_time: energy extension disabled");
    const Energy& e = *instance.energy;
    if (depleted < -1e-12 || depleted > e.b0 - e.b_min + 1e-12)
        throw std::invalid_argument("adjusted_charge_time: depletion crosses b_min");
    const double l = instance.stations[static_cast<std::size_t>(station)].charge;
    if (e.b0 >= 1.0) return l; // fully charged at departure, nothing to prorate
    return l + depleted * l / (1.0 - e.b0);
}

namespace detail {

PlanTrace trace_plan(const SearchPlan& plan, const Instance& instance) {
    const auto& v = plan.visits;
    PlanTrace tr;
    tr.p_tilde.resize(v.size());
    tr.arrival.resize(v.size());
    tr.gamma.resize(v.size());

    double elapsed = 0.0;
    double depleted = 0.0;
    std::vector<double> last_arrival(static_cast<std::size_t>(instance.num_vertices()), -1.0);
    const bool energy_charge =
        instance.energy.has_value() && charge_sensitive(instance.variant);

    for (std::size_t i = 0; i < v.size(); ++i) {
        const int c = v[i];
        if (i > 0) {
            elapsed += instance.travel[v[i - 1]][c];
            if (instance.energy) depleted += instance.energy->consumption[v[i - 1]][c];
        }
        tr.arrival[i] = elapsed;
        if (i == 0) {
            tr.p_tilde[i] = instance.stations[0].p; // start vertex, p = 0
            tr.gamma[i] = instance.effective_gamma(0);
        } else {
            const Station& st = instance.stations[static_cast<std::size_t>(c)];
            const double prev = last_arrival[static_cast<std::size_t>(c)];
            if (prev < 0.0) {
                tr.p_tilde[i] = st.p;
            } else if (instance.recovery) {
                if (!st.mu_inv)
                    throw std::invalid_argument("trace_plan: recovery requires mu_inv");
                tr.p_tilde[i] = recovery_probability(st.p, *st.mu_inv, elapsed - prev);
            } else {
                tr.p_tilde[i] = 0.0;
            }
            double g = instance.effective_gamma(c);
            if (energy_charge && !st.gamma)
                g = adjusted_charge_time(instance, depleted, c);
            tr.gamma[i] = g;
        }
        last_arrival[static_cast<std::size_t>(c)] = elapsed;
    }

    const int last = v.back();
    double beta = instance.effective_beta(last);
    if (energy_charge && instance.variant == Variant::D &&
        !instance.stations[static_cast<std::size_t>(last)].beta)
        beta = instance.stations[static_cast<std::size_t>(last)].wait +
               adjusted_charge_time(instance, depleted, last);
    tr.terminal_beta = beta;
    return tr;
}

} // namespace detail

namespace {

CostBreakdown evaluate(const SearchPlan& plan, const Instance& instance) {
    auto violations = plan_violations(instance, plan);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "expected_cost: infeasible plan:";
        for (const auto& s : violations) msg << " " << s << ";";
        throw std::invalid_argument(msg.str());
    }
    const auto tr = detail::trace_plan(plan, instance);
    const auto& v = plan.visits;
    const std::size_t n = v.size();

    // Closed-form expansion.
    double rho_bar = 1.0;
    double partial = 0.0;
    double travel_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double t = instance.travel[v[i - 1]][v[i]];
            travel_sum += t;
            partial += rho_bar * t; // rho_bar(i-1) weight on arc into visit i
        }
        partial += rho_bar * tr.p_tilde[i] * tr.gamma[i];
        rho_bar *= 1.0 - tr.p_tilde[i];
    }
    const double alpha_closed = partial + rho_bar * tr.terminal_beta;

    // Backward recursion, conditional on the current station being occupied.
    double value = tr.terminal_beta;
    for (std::size_t k = n - 1; k-- > 0;) {
        const double t = instance.travel[v[k]][v[k + 1]];
        value = t + tr.p_tilde[k + 1] * tr.gamma[k + 1] + (1.0 - tr.p_tilde[k + 1]) * value;
    }
    const double alpha_recursive = value;

    if (std::abs(alpha_closed - alpha_recursive) > 1e-9) {
        std::ostringstream msg;
        msg << "expected_cost: recursive and closed-form evaluations disagree (" << alpha_recursive
            << " vs " << alpha_closed << ")";
        throw std::logic_error(msg.str());
    }

    CostBreakdown out;
    out.alpha = alpha_closed;
    out.partial_cost = partial;
    out.rho_bar = rho_bar;
    out.rho = 1.0 - rho_bar;
    out.travel_time = travel_sum;
    return out;
}

} // namespace

CostBreakdown expected_cost(const SearchPlan& plan, const Instance& instance) {
    return evaluate(plan, instance);
}

CostBreakdown decompose(const SearchPlan& plan, const Instance& instance) {
    CostBreakdown out = evaluate(plan, instance);
    const auto tr = detail::trace_plan(plan, instance);
    const auto& v = plan.visits;

    // B_n = sum_k rho_bar(k-1) * p_k * (arrival_k + gamma_k); t^s = B_n / rho.
    double rho_bar_prefix = 1.0;
    double b = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        b += rho_bar_prefix * tr.p_tilde[i] * (tr.arrival[i] + tr.gamma[i]);
        rho_bar_prefix *= 1.0 - tr.p_tilde[i];
    }
    if (out.rho > 0.0) {
        out.success_time = b / out.rho;
        const double recomposed =
            *out.success_time * out.rho + out.rho_bar * (out.travel_time + tr.terminal_beta);
        if (std::abs(recomposed - out.alpha) > 1e-9)
            throw std::logic_error("decompose: decomposition identity violated");
    }
    return out;
}

} // namespace scps
