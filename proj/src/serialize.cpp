#include "scps/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scps {

json instance_to_json(const Instance& instance) {
    json j;
    j["schema"] = 1;
    j["t_max"] = instance.t_max;
    j["variant"] = variant_name(instance.variant);
    j["beta_bar"] = instance.beta_bar;
    j["action_space"] = {{"kind", action_space_name(instance.action_space.kind)},
                         {"t_r", instance.action_space.t_r}};
    j["recovery"] = instance.recovery;
    if (instance.energy) {
        const Energy& e = *instance.energy;
        j["energy"] = {{"b0", e.b0},
                       {"b_min", e.b_min},
                       {"capacity_kwh", e.capacity_kwh},
                       {"consumption", e.consumption}};
    } else {
        j["energy"] = nullptr;
    }
    json stations = json::array();
    for (const Station& s : instance.stations) {
        json js;
        js["id"] = s.id;
        js["p"] = s.p;
        js["wait"] = s.wait;
        js["charge"] = s.charge;
        if (s.mu_inv) js["mu_inv"] = *s.mu_inv;
        if (s.beta) js["beta"] = *s.beta;
        if (s.gamma) js["gamma"] = *s.gamma;
        stations.push_back(std::move(js));
    }
    j["stations"] = std::move(stations);
    j["travel"] = instance.travel;
    return j;
}

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& why) {
    throw std::invalid_argument("instance schema: field \"" + field + "\" " + why);
}

template <typename T>
T require(const json& j, const std::string& field) {
    if (!j.contains(field)) schema_error(field, "is missing");
    try {
        return j.at(field).get<T>();
    } catch (const json::exception&) {
        schema_error(field, "has the wrong type");
    }
}

} // namespace

Instance instance_from_json(const json& j) {
    Instance inst;
    inst.t_max = require<double>(j, "t_max");
    inst.variant = variant_from_name(require<std::string>(j, "variant"));
    inst.beta_bar = require<double>(j, "beta_bar");
    if (j.contains("action_space") && !j.at("action_space").is_null()) {
        const json& as = j.at("action_space");
        inst.action_space.kind = action_space_from_name(require<std::string>(as, "kind"));
        if (as.contains("t_r")) inst.action_space.t_r = as.at("t_r").get<double>();
    }
    inst.recovery = j.contains("recovery") && !j.at("recovery").is_null() &&
                    j.at("recovery").get<bool>();
    if (j.contains("energy") && !j.at("energy").is_null()) {
        const json& e = j.at("energy");
        Energy energy;
        energy.b0 = require<double>(e, "b0");
        energy.b_min = require<double>(e, "b_min");
        if (e.contains("capacity_kwh")) energy.capacity_kwh = e.at("capacity_kwh").get<double>();
        energy.consumption = require<std::vector<std::vector<double>>>(e, "consumption");
        inst.energy = std::move(energy);
    }
    const json& stations = j.contains("stations") ? j.at("stations") : json{};
    if (!stations.is_array()) schema_error("stations", "must be an array");
    for (const json& js : stations) {
        Station s;
        s.id = require<int>(js, "id");
        s.p = require<double>(js, "p");
        if (js.contains("wait")) s.wait = js.at("wait").get<double>();
        if (js.contains("charge")) s.charge = js.at("charge").get<double>();
        if (js.contains("mu_inv") && !js.at("mu_inv").is_null())
            s.mu_inv = js.at("mu_inv").get<double>();
        if (js.contains("beta") && !js.at("beta").is_null()) s.beta = js.at("beta").get<double>();
        if (js.contains("gamma") && !js.at("gamma").is_null())
            s.gamma = js.at("gamma").get<double>();
        inst.stations.push_back(std::move(s));
    }
    inst.travel = require<std::vector<std::vector<double>>>(j, "travel");
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("parse error in " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open instance file for writing: " + path);
    out << instance_to_json(instance).dump(2) << "\n";
}

json plan_to_json(const SearchPlan& plan) {
    return {{"visits", plan.visits}, {"wait_at_end", plan.wait_at_end}};
}

SearchPlan plan_from_json(const json& j) {
    SearchPlan plan;
    plan.visits = require<std::vector<int>>(j, "visits");
    plan.wait_at_end = j.contains("wait_at_end") && j.at("wait_at_end").get<bool>();
    return plan;
}

json cost_to_json(const CostBreakdown& cost) {
    json j;
    j["alpha"] = cost.alpha;
    j["partial_cost"] = cost.partial_cost;
    j["rho"] = cost.rho;
    j["rho_bar"] = cost.rho_bar;
    j["travel_time"] = cost.travel_time;
    if (cost.success_time)
        j["success_time"] = *cost.success_time;
    else
        j["success_time"] = nullptr;
    return j;
}

json labeling_stats_to_json(const SolveStats& stats) {
    return {{"labels_created", stats.labels_created},
            {"labels_dominated", stats.labels_dominated},
            {"peak_frontier", stats.peak_frontier},
            {"runtime_ms", stats.runtime_ms},
            {"truncated", stats.truncated}};
}

json rollout_stats_to_json(const RolloutStats& stats) {
    return {{"epochs", stats.epochs},
            {"candidate_evaluations", stats.candidate_evaluations},
            {"runtime_ms", stats.runtime_ms}};
}

json metrics_to_json(const MetricsReport& report) {
    json algos = json::array();
    for (const AlgorithmMetrics& m : report.algorithms) {
        algos.push_back({{"name", m.name},
                         {"mean_realized_cost", m.mean_cost},
                         {"avg_deviation", m.avg_deviation},
                         {"success_rate", m.success_rate},
                         {"max_realized_cost", m.max_cost},
                         {"max_deviation", m.max_deviation},
                         {"runs", m.runs}});
    }
    return {{"schema", 1},
            {"runs", report.runs},
            {"master_seed", report.master_seed},
            {"algorithms", std::move(algos)}};
}

std::string metrics_to_csv(const MetricsReport& report) {
    std::ostringstream out;
    out << "algorithm,runs,mean_realized_cost,avg_deviation,success_rate,max_realized_cost,"
           "max_deviation\n";
    for (const AlgorithmMetrics& m : report.algorithms) {
        out << m.name << "," << m.runs << "," << m.mean_cost << "," << m.avg_deviation << ","
            << m.success_rate << "," << m.max_cost << "," << m.max_deviation << "\n";
    }
    return out.str();
}

json gen_config_to_json(const GenConfig& config) {
    return {{"generator", "splitmix64"},
            {"seed", config.seed},
            {"n_stations", config.n_stations},
            {"layout", config.layout == LayoutKind::UniformSquare ? "uniform" : "clustered"},
            {"side_m", config.side_m},
            {"clusters", config.clusters},
            {"min_separation_m", config.min_separation_m},
            {"speed_kmh", config.speed_kmh},
            {"availability", availability_name(config.availability)},
            {"concentration", config.concentration},
            {"t_max", config.t_max}};
}

json strip_runtime_fields(json j) {
    if (j.is_object()) {
        j.erase("runtime_ms");
        for (auto& [key, value] : j.items()) value = strip_runtime_fields(value);
    } else if (j.is_array()) {
        for (auto& value : j) value = strip_runtime_fields(value);
    }
    return j;
}

} // namespace scps
