#ifndef SCPS_INSTANCE_HPP
#define SCPS_INSTANCE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scps {

// Problem setting variants. Each variant fixes the (beta, gamma, waiting)
// triple: A = (beta_bar, 0, no-wait), B = (W_c, 0, wait),
// C = (beta_bar, L_c, no-wait), D = (W_c + L_c, L_c, wait).
enum class Variant { A, B, C, D };

inline bool allows_waiting(Variant v) { return v == Variant::B || v == Variant::D; }
inline bool charge_sensitive(Variant v) { return v == Variant::C || v == Variant::D; }

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

enum class ActionSpaceKind {
    Complete,                   // CO: any reachable unvisited station
    DirectNeighbors,            // DN: direct neighbors only, revisits allowed
    DirectNeighborsRestricted,  // DN_R: direct neighbors, no revisits
    TimeRestricted,             // TR: CO limited to stations within t_r minutes
};

struct ActionSpace {
    ActionSpaceKind kind = ActionSpaceKind::Complete;
    double t_r = 5.0; // minutes, TimeRestricted only

    bool operator==(const ActionSpace&) const = default;
};

const char* action_space_name(ActionSpaceKind k);
ActionSpaceKind action_space_from_name(const std::string& name);

struct Station {
    int id = 0;
    double p = 0.0;      // initial availability probability p_c
    double wait = 0.0;   // expected waiting duration W_c [min]
    double charge = 0.0; // charging duration L_c [min]
    std::optional<double> mu_inv;     // mean occupied duration 1/mu_c [min], recovery
    std::optional<double> beta;       // per-station termination penalty override
    std::optional<double> gamma;      // per-station usage cost override

    bool operator==(const Station&) const = default;
};

// Energy extension: state of charge is a fraction of full capacity.
struct Energy {
    double b0 = 1.0;    // initial SoC
    double b_min = 0.0; // minimum feasible SoC
    std::vector<std::vector<double>> consumption; // per-arc SoC consumption k_{c,c'}
    double capacity_kwh = 52.0; // metadata only

    bool operator==(const Energy&) const = default;
};

struct Instance {
    std::vector<Station> stations;            // index 0 = start vertex (p = 0)
    std::vector<std::vector<double>> travel;  // dense minutes matrix, travel[i][i] = 0
    double t_max = 0.0;                       // search time budget [min]
    Variant variant = Variant::A;
    double beta_bar = 120.0;                  // constant penalty for no-wait variants
    ActionSpace action_space;
    bool recovery = false;
    std::optional<Energy> energy;

    bool operator==(const Instance&) const = default;

    int num_vertices() const { return static_cast<int>(stations.size()); }
    int num_chargers() const { return num_vertices() - 1; }
    bool is_charger(int c) const { return c > 0; }

    // Effective Table-2 parameters for vertex c under this instance's variant.
    // Per-station overrides (used by the TSP reduction) take precedence.
    double effective_beta(int c) const;
    double effective_gamma(int c) const;
    bool has_beta_overrides() const;

    // Bounds used by the sharpened dominance relation; computed over chargers.
    double min_charger_travel() const; // t_lower, min over distinct charger pairs
    double max_charger_p() const;      // p_upper
    double min_wait() const;
    double max_wait() const;
    double min_charge() const;
    double max_charge() const;
};

// Solution object: ordered station visits starting at the start vertex, plus
// the terminal wait decision for waiting variants.
struct SearchPlan {
    std::vector<int> visits{0};
    bool wait_at_end = false;

    bool operator==(const SearchPlan&) const = default;
};

// One permitted transition from the end of a visit prefix. wait == true marks
// a terminal decision: travel to `to` (possibly the current station itself)
// and wait there until the spot frees up.
struct Move {
    int to = 0;
    bool wait = false;

    bool operator==(const Move&) const = default;
    auto operator<=>(const Move&) const = default;
};

// Returns an empty list iff all instance invariants hold; each entry names
// the offending field and rule. Pure function.
std::vector<std::string> validate(const Instance& instance);

// All (station, wait) actions permitted from the end of `prefix` under the
// instance's variant and action space. `elapsed` must equal the cumulative
// travel along the prefix. An empty result is a forced termination state.
std::vector<Move> feasible_successors(const Instance& instance, std::span<const int> prefix,
                                      double elapsed);

// Energy-aware variant; `soc` is the state of charge at the end of the prefix.
std::vector<Move> feasible_successors(const Instance& instance, std::span<const int> prefix,
                                      double elapsed, double soc);

// True when `to` is a direct neighbor of `from`: no station d lies on a path
// through d that is as short as the direct arc (tolerance 1e-9).
bool is_direct_neighbor(const Instance& instance, int from, int to);

// Direct-neighbor adjacency for every ordered vertex pair, precomputed once
// for the solvers' inner loops.
std::vector<std::vector<bool>> neighbor_matrix(const Instance& instance);

// Shared move rule behind feasible_successors; `visited` is a bitset over
// station ids and `neighbors` may be null outside the direct-neighbor spaces.
std::vector<Move> successor_moves(const Instance& instance, int current, std::uint64_t visited,
                                  double elapsed, double soc,
                                  const std::vector<std::vector<bool>>* neighbors);

// Checks budget and revisit legality of a plan; empty result means feasible.
std::vector<std::string> plan_violations(const Instance& instance, const SearchPlan& plan);

double plan_travel_time(const Instance& instance, const SearchPlan& plan);

// Drops chargers whose direct travel time from the start exceeds the radius
// (given in minutes here since the graph carries times, not distances).
Instance filter_by_radius(const Instance& instance, double max_minutes_from_start);

// Constructive reduction from metric TSP (decision version) used as a test
// fixture: q-availability stations, duplicated start, and penalty values that
// make "tour of length <= theta exists" equivalent to "optimal search cost
// <= threshold".
struct TspReduction {
    Instance instance;
    double threshold = 0.0;     // q*theta + q^(n+1) * beta_terminal
    double beta_terminal = 0.0; // penalty at the duplicated start s'
    double beta_city = 0.0;     // penalty at every other vertex
    double q = 0.0;
    int n_cities = 0;
};

TspReduction reduce_tsp(const std::vector<std::vector<int>>& distances, int start, double q,
                        int theta);

// Admissible lower bound for q in the reduction: (1 - 1/(Delta(n+1)))^(1/(n-1)).
double tsp_reduction_min_q(int n_cities, int max_distance);

} // namespace scps

#endif // SCPS_INSTANCE_HPP
