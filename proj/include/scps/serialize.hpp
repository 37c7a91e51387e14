#ifndef SCPS_SERIALIZE_HPP
#define SCPS_SERIALIZE_HPP

#include "scps/gen.hpp"
#include "scps/instance.hpp"
#include "scps/labeling.hpp"
#include "scps/rollout.hpp"
#include "scps/simulation.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace scps {

using json = nlohmann::ordered_json;

// Instance file schema (schema version 1). Field order is deterministic on
// save; unknown fields are ignored on load.
json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& j);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

json plan_to_json(const SearchPlan& plan);
SearchPlan plan_from_json(const json& j);

json cost_to_json(const CostBreakdown& cost);
json labeling_stats_to_json(const SolveStats& stats);
json rollout_stats_to_json(const RolloutStats& stats);

json metrics_to_json(const MetricsReport& report);
std::string metrics_to_csv(const MetricsReport& report);

json gen_config_to_json(const GenConfig& config);

// Strips volatile runtime fields (runtime_ms) anywhere in the document, for
// byte-level reproducibility comparisons.
json strip_runtime_fields(json j);

} // namespace scps

#endif // SCPS_SERIALIZE_HPP
