#pragma once

#include <json.hpp>
#include <string>

#include "barrier_reach/metann.hpp"
#include "barrier_reach/planner.hpp"

namespace barrier_reach {

// nlohmann ADL hooks; doubles rely on the library's shortest round-trip
// formatting, so serialize -> parse is bit-exact.
void to_json(nlohmann::json& j, const HyperBox& box);
void from_json(const nlohmann::json& j, HyperBox& box);

void to_json(nlohmann::json& j, const OctagonRegion& region);
void from_json(const nlohmann::json& j, OctagonRegion& region);

void to_json(nlohmann::json& j, const QuadraticCertificate& cert);
void from_json(const nlohmann::json& j, QuadraticCertificate& cert);

void to_json(nlohmann::json& j, const Mlp& net);
void from_json(const nlohmann::json& j, Mlp& net);

void to_json(nlohmann::json& j, const Scenario& scenario);
void from_json(const nlohmann::json& j, Scenario& scenario);

void to_json(nlohmann::json& j, const VerificationOutcome& outcome);

void to_json(nlohmann::json& j, const ReachSet& rs);
void from_json(const nlohmann::json& j, ReachSet& rs);

nlohmann::json plan_step_to_json(const PlanStep& step);
nlohmann::json round_record_to_json(const RoundRecord& record);

std::string status_name(VerificationStatus status);
std::string condition_name(ConditionKind condition);

/// JSON-lines dataset file: a meta record first, then one pair per line.
void save_dataset(const std::string& path, const Dataset& dataset);
Dataset load_dataset(const std::string& path);

void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

void save_mlp(const std::string& path, const Mlp& net);
Mlp load_mlp(const std::string& path);

Scenario load_scenario(const std::string& path);

/// Structural validator for the subset of JSON Schema the shipped schemas
/// use: type, properties/required/additionalProperties, items, enum,
/// minItems/maxItems, minimum/maximum.
bool matches_schema(const nlohmann::json& value, const nlohmann::json& schema,
                    std::string* error = nullptr);

}  // namespace barrier_reach
