#include "scps/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace scps {

namespace {
constexpr double kNeighborEps = 1e-9;
} // namespace

const char* variant_name(Variant v) {
    switch (v) {
    case Variant::A: return "A";
    case Variant::B: return "B";
    case Variant::C: return "C";
    case Variant::D: return "D";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "A") return Variant::A;
    if (name == "B") return Variant::B;
    if (name == "C") return Variant::C;
    if (name == "D") return Variant::D;
    throw std::invalid_argument("unknown variant: " + name);
}

const char* action_space_name(ActionSpaceKind k) {
    switch (k) {
    case ActionSpaceKind::Complete: return "CO";
    case ActionSpaceKind::DirectNeighbors: return "DN";
    case ActionSpaceKind::DirectNeighborsRestricted: return "DN_R";
    case ActionSpaceKind::TimeRestricted: return "TR";
    }
    return "?";
}

ActionSpaceKind action_space_from_name(const std::string& name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::toupper(c); });
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "CO") return ActionSpaceKind::Complete;
    if (n == "DN") return ActionSpaceKind::DirectNeighbors;
    if (n == "DN_R") return ActionSpaceKind::DirectNeighborsRestricted;
    if (n == "TR") return ActionSpaceKind::TimeRestricted;
    throw std::invalid_argument("unknown action space: " + name);
}

double Instance::effective_beta(int c) const {
    const Station& s = stations.at(static_cast<std::size_t>(c));
    if (s.beta) return *s.beta;
    if (c == 0) return beta_bar; // forced termination at the start
    switch (variant) {
    case Variant::A:
    case Variant::C: return beta_bar;
    case Variant::B: return s.wait;
    case Variant::D: return s.wait + s.charge;
    }
    return beta_bar;
}

double Instance::effective_gamma(int c) const {
    const Station& s = stations.at(static_cast<std::size_t>(c));
    if (s.gamma) return *s.gamma;
    if (c == 0) return 0.0;
    return charge_sensitive(variant) ? s.charge : 0.0;
}

bool Instance::has_beta_overrides() const {
    return std::any_of(stations.begin(), stations.end(),
                       [](const Station& s) { return s.beta.has_value(); });
}

double Instance::min_charger_travel() const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < num_vertices(); ++i)
        for (int j = 1; j < num_vertices(); ++j)
            if (i != j) best = std::min(best, travel[i][j]);
    return best;
}

double Instance::max_charger_p() const {
    double best = 0.0;
    for (int i = 1; i < num_vertices(); ++i) best = std::max(best, stations[i].p);
    return best;
}

double Instance::min_wait() const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < num_vertices(); ++i) best = std::min(best, stations[i].wait);
    return best;
}

double Instance::max_wait() const {
    double best = 0.0;
    for (int i = 1; i < num_vertices(); ++i) best = std::max(best, stations[i].wait);
    return best;
}

double Instance::min_charge() const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < num_vertices(); ++i) best = std::min(best, stations[i].charge);
    return best;
}

double Instance::max_charge() const {
    double best = 0.0;
    for (int i = 1; i < num_vertices(); ++i) best = std::max(best, stations[i].charge);
    return best;
}

std::vector<std::string> validate(const Instance& instance) {
    std::vector<std::string> out;
    auto fail = [&out](const std::string& msg) { out.push_back(msg); };

    const int n = instance.num_vertices();
    if (n == 0) {
        fail("instance: no vertices (start vertex required)");
        return out;
    }
    for (int i = 0; i < n; ++i) {
        const Station& s = instance.stations[i];
        std::ostringstream name;
        name << "station " << i;
        if (s.id != i) fail(name.str() + ": id must equal its index");
        if (!(s.p >= 0.0 && s.p <= 1.0)) fail(name.str() + ": p out of [0,1]");
        if (s.wait < 0.0) fail(name.str() + ": negative waiting duration");
        if (s.charge < 0.0) fail(name.str() + ": negative charging duration");
        if (s.mu_inv && *s.mu_inv <= 0.0) fail(name.str() + ": mu_inv must be > 0");
        if (s.beta && *s.beta < 0.0) fail(name.str() + ": negative termination penalty");
        if (s.gamma && *s.gamma < 0.0) fail(name.str() + ": negative usage cost");
    }
    if (n > 0) {
        const Station& start = instance.stations[0];
        if (start.p != 0.0) fail("station 0: start vertex must have p = 0");
        if (start.gamma && *start.gamma != 0.0) fail("station 0: start vertex must have gamma = 0");
    }
    if (static_cast<int>(instance.travel.size()) != n) {
        fail("travel: matrix must be " + std::to_string(n) + "x" + std::to_string(n));
        return out;
    }
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(instance.travel[i].size()) != n) {
            fail("travel: row " + std::to_string(i) + " has wrong length");
            continue;
        }
        for (int j = 0; j < n; ++j) {
            if (instance.travel[i][j] < 0.0) {
                std::ostringstream msg;
                msg << "arc (" << i << "," << j << "): negative travel time";
                fail(msg.str());
            }
        }
        if (i < static_cast<int>(instance.travel.size()) &&
            static_cast<int>(instance.travel[i].size()) == n && instance.travel[i][i] != 0.0)
            fail("arc (" + std::to_string(i) + "," + std::to_string(i) + "): diagonal must be 0");
    }
    if (instance.t_max < 0.0) fail("t_max: must be >= 0");
    if (instance.beta_bar < 0.0) fail("beta_bar: must be >= 0");
    if (instance.action_space.kind == ActionSpaceKind::TimeRestricted &&
        instance.action_space.t_r < 0.0)
        fail("action_space: t_r must be >= 0");
    if (instance.recovery) {
        for (int i = 1; i < n; ++i)
            if (!instance.stations[i].mu_inv)
                fail("station " + std::to_string(i) + ": recovery enabled but mu_inv missing");
    }
    if (instance.energy) {
        const Energy& e = *instance.energy;
        if (!(e.b0 >= 0.0 && e.b0 <= 1.0)) fail("energy: b0 out of [0,1]");
        if (!(e.b_min >= 0.0 && e.b_min <= 1.0)) fail("energy: b_min out of [0,1]");
        if (e.b_min > e.b0) fail("energy: b_min exceeds b0");
        if (static_cast<int>(e.consumption.size()) != n)
            fail("energy: consumption matrix must match vertex count");
        else
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(e.consumption[i].size()) != n) {
                    fail("energy: consumption row " + std::to_string(i) + " has wrong length");
                    continue;
                }
                for (int j = 0; j < n; ++j)
                    if (e.consumption[i][j] < 0.0)
                        fail("energy: negative consumption on arc (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
            }
    }
    return out;
}

bool is_direct_neighbor(const Instance& instance, int from, int to) {
    const double direct = instance.travel[from][to];
    for (int d = 1; d < instance.num_vertices(); ++d) {
        if (d == from || d == to) continue;
        if (instance.travel[from][d] + instance.travel[d][to] <= direct + kNeighborEps)
            return false;
    }
    return true;
}

std::vector<std::vector<bool>> neighbor_matrix(const Instance& instance) {
    const int n = instance.num_vertices();
    std::vector<std::vector<bool>> out(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j)
            if (i != j) out[i][j] = is_direct_neighbor(instance, i, j);
    return out;
}

std::vector<Move> successor_moves(const Instance& instance, int current, std::uint64_t visited,
                                  double elapsed, double soc,
                                  const std::vector<std::vector<bool>>* neighbors) {
    const ActionSpace& as = instance.action_space;
    const bool waiting = allows_waiting(instance.variant);
    const bool dn = as.kind == ActionSpaceKind::DirectNeighbors ||
                    as.kind == ActionSpaceKind::DirectNeighborsRestricted;
    const bool revisit_travel = instance.recovery || as.kind == ActionSpaceKind::DirectNeighbors;

    std::vector<Move> moves;
    auto arc_ok = [&](int c) {
        const double t = instance.travel[current][c];
        if (elapsed + t > instance.t_max) return false;
        if (as.kind == ActionSpaceKind::TimeRestricted && t > as.t_r) return false;
        if (dn) {
            const bool adjacent = neighbors ? (*neighbors)[current][c]
                                            : is_direct_neighbor(instance, current, c);
            if (!adjacent) return false;
        }
        if (instance.energy && soc - instance.energy->consumption[current][c] < instance.energy->b_min)
            return false;
        return true;
    };

    for (int c = 1; c < instance.num_vertices(); ++c) {
        const bool seen = (visited >> c) & 1ULL;
        if (c != current && arc_ok(c)) {
            if (!seen || revisit_travel) {
                moves.push_back({c, false});
            } else if (waiting && !instance.recovery) {
                // Travel back to a previously observed station and wait there.
                moves.push_back({c, true});
            }
        }
    }
    if (waiting && instance.is_charger(current)) moves.push_back({current, true});
    std::sort(moves.begin(), moves.end());
    return moves;
}

std::vector<Move> feasible_successors(const Instance& instance, std::span<const int> prefix,
                                      double elapsed) {
    double soc = instance.energy ? instance.energy->b0 : 1.0;
    if (instance.energy)
        for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
            soc -= instance.energy->consumption[prefix[i]][prefix[i + 1]];
    return feasible_successors(instance, prefix, elapsed, soc);
}

std::vector<Move> feasible_successors(const Instance& instance, std::span<const int> prefix,
                                      double elapsed, double soc) {
    if (prefix.empty() || prefix.front() != 0)
        throw std::invalid_argument("prefix must start at the start vertex");
    if (instance.num_vertices() > 64)
        throw std::invalid_argument("feasible_successors: at most 64 vertices supported");
    std::uint64_t visited = 0;
    for (int v : prefix) visited |= 1ULL << v;
    return successor_moves(instance, prefix.back(), visited, elapsed, soc, nullptr);
}

double plan_travel_time(const Instance& instance, const SearchPlan& plan) {
    double t = 0.0;
    for (std::size_t i = 0; i + 1 < plan.visits.size(); ++i)
        t += instance.travel[plan.visits[i]][plan.visits[i + 1]];
    return t;
}

std::vector<std::string> plan_violations(const Instance& instance, const SearchPlan& plan) {
    std::vector<std::string> out;
    if (plan.visits.empty() || plan.visits.front() != 0) {
        out.push_back("plan: must start at the start vertex");
        return out;
    }
    for (int v : plan.visits)
        if (v < 0 || v >= instance.num_vertices()) {
            out.push_back("plan: unknown station id " + std::to_string(v));
            return out;
        }
    for (std::size_t i = 1; i < plan.visits.size(); ++i)
        if (plan.visits[i] == 0) out.push_back("plan: revisits the start vertex");
    if (plan_travel_time(instance, plan) > instance.t_max + 1e-12)
        out.push_back("plan: cumulative travel time exceeds t_max");
    if (!allows_waiting(instance.variant) && plan.wait_at_end)
        out.push_back("plan: wait_at_end set for a no-waiting variant");

    const bool revisits_free = instance.recovery ||
                               instance.action_space.kind == ActionSpaceKind::DirectNeighbors;
    if (!revisits_free) {
        std::vector<int> count(static_cast<std::size_t>(instance.num_vertices()), 0);
        for (int v : plan.visits) ++count[static_cast<std::size_t>(v)];
        for (int c = 1; c < instance.num_vertices(); ++c) {
            int k = count[static_cast<std::size_t>(c)];
            if (k <= 1) continue;
            const bool terminal_revisit = allows_waiting(instance.variant) && k == 2 &&
                                          plan.visits.back() == c;
            if (!terminal_revisit)
                out.push_back("plan: illegal revisit of station " + std::to_string(c));
        }
    }
    if (instance.energy) {
        double b = instance.energy->b0;
        for (std::size_t i = 0; i + 1 < plan.visits.size(); ++i) {
            b -= instance.energy->consumption[plan.visits[i]][plan.visits[i + 1]];
            if (b < instance.energy->b_min - 1e-12) {
                out.push_back("plan: state of charge drops below b_min");
                break;
            }
        }
    }
    return out;
}

Instance filter_by_radius(const Instance& instance, double max_minutes_from_start) {
    Instance out = instance;
    std::vector<int> keep{0};
    for (int c = 1; c < instance.num_vertices(); ++c)
        if (instance.travel[0][c] <= max_minutes_from_start) keep.push_back(c);
    out.stations.clear();
    out.travel.assign(keep.size(), std::vector<double>(keep.size(), 0.0));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        Station s = instance.stations[static_cast<std::size_t>(keep[i])];
        s.id = static_cast<int>(i);
        out.stations.push_back(s);
        for (std::size_t j = 0; j < keep.size(); ++j)
            out.travel[i][j] = instance.travel[keep[i]][keep[j]];
    }
    if (instance.energy) {
        Energy e = *instance.energy;
        e.consumption.assign(keep.size(), std::vector<double>(keep.size(), 0.0));
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j)
                e.consumption[i][j] = instance.energy->consumption[keep[i]][keep[j]];
        out.energy = e;
    }
    return out;
}

double tsp_reduction_min_q(int n_cities, int max_distance) {
    const double n = n_cities;
    return std::pow(1.0 - 1.0 / (max_distance * (n + 1.0)), 1.0 / (n - 1.0));
}

TspReduction reduce_tsp(const std::vector<std::vector<int>>& distances, int start, double q,
                        int theta) {
    const int n = static_cast<int>(distances.size());
    if (n < 3) throw std::invalid_argument("reduce_tsp: need at least 3 cities");
    if (start < 0 || start >= n) throw std::invalid_argument("reduce_tsp: start out of range");
    int delta = 0;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(distances[i].size()) != n)
            throw std::invalid_argument("reduce_tsp: distance matrix must be square");
        if (distances[i][i] != 0)
            throw std::invalid_argument("reduce_tsp: diagonal must be 0");
        for (int j = 0; j < n; ++j) {
            if (i != j && distances[i][j] < 1)
                throw std::invalid_argument("reduce_tsp: off-diagonal distances must be >= 1");
            delta = std::max(delta, distances[i][j]);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (distances[i][j] + distances[j][k] < distances[i][k])
                    throw std::invalid_argument("reduce_tsp: distances violate triangle inequality");
    const double q_min = tsp_reduction_min_q(n, delta);
    if (!(q >= q_min && q < 1.0))
        throw std::invalid_argument("reduce_tsp: q outside admissible interval [" +
                                    std::to_string(q_min) + ", 1)");

    const double beta_terminal = 2.0 * delta / (q * (1.0 - q)) + 1.0;
    const double beta_city = (beta_terminal + n * delta) / std::pow(q, n + 1) + 1.0;

    // Vertex layout: 0 = start (non-charger), 1 = charger copy of the start
    // city at distance 0, 2..n = remaining cities, n+1 = terminal duplicate s'
    // at distance 0 from the start city.
    std::vector<int> city_of; // instance vertex -> city index
    city_of.push_back(start); // vertex 0
    city_of.push_back(start); // vertex 1, start city as charger
    for (int c = 0; c < n; ++c)
        if (c != start) city_of.push_back(c);
    city_of.push_back(start); // terminal duplicate

    const int m = static_cast<int>(city_of.size());
    Instance inst;
    inst.variant = Variant::A;
    inst.beta_bar = beta_city;
    inst.t_max = static_cast<double>(n) * delta + 1.0;
    inst.action_space.kind = ActionSpaceKind::Complete;
    inst.stations.resize(static_cast<std::size_t>(m));
    inst.travel.assign(static_cast<std::size_t>(m),
                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int i = 0; i < m; ++i) {
        Station& s = inst.stations[static_cast<std::size_t>(i)];
        s.id = i;
        s.p = i == 0 ? 0.0 : 1.0 - q;
        s.gamma = 0.0;
        s.beta = i == m - 1 ? beta_terminal : beta_city;
        for (int j = 0; j < m; ++j)
            inst.travel[i][j] = i == j ? 0.0 : static_cast<double>(distances[city_of[i]][city_of[j]]);
    }
    inst.stations[0].gamma = 0.0;

    TspReduction red;
    red.instance = std::move(inst);
    red.beta_terminal = beta_terminal;
    red.beta_city = beta_city;
    red.q = q;
    red.n_cities = n;
    red.threshold = q * theta + std::pow(q, n + 1) * beta_terminal;
    return red;
}

} // namespace scps
