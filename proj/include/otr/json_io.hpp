#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "otr/experiment.hpp"
#include "otr/model.hpp"
#include "otr/offline.hpp"
#include "otr/policy.hpp"

// JSON (de)serialization for every on-disk format, plus the CSV exports.
// ordered_json keeps key order fixed so serialized artifacts are byte-stable.

namespace otr {

using Json = nlohmann::ordered_json;

Json to_json(const NetworkSpec& net);
Json to_json(const ArrivalProfile& profile);
Json to_json(const ScenarioPreset& preset);
Json to_json(const InputSequence& seq);
Json to_json(const Assignment& assignment);
Json to_json(const OptResult& result);
Json to_json(const TiPolicy& policy);
Json to_json(const TdPolicy& policy);
Json to_json(const ExperimentReport& report);

NetworkSpec network_from_json(const Json& j);
ArrivalProfile profile_from_json(const Json& j);
ScenarioPreset preset_from_json(const Json& j);
InputSequence sequence_from_json(const Json& j);
TiPolicy ti_policy_from_json(const Json& j);
TdPolicy td_policy_from_json(const Json& j);

// Throws std::runtime_error with the path on I/O or parse failure.
Json load_json(const std::string& path);
void save_json(const Json& j, const std::string& path);

// instances.csv plus one histogram CSV per algorithm, written under `dir`.
void write_report_csvs(const ExperimentReport& report, const std::string& dir);

// Shortest round-trip decimal rendering (used for CSV cells and JSON keys).
std::string format_double(double v);

}  // namespace otr
