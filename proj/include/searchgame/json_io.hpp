#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "searchgame/equilibrium.hpp"
#include "searchgame/instance.hpp"
#include "searchgame/scenarios.hpp"
#include "searchgame/welfare.hpp"

namespace searchgame {

using json = nlohmann::json;

// Instance schema:
//   { "beta": real, "engines": int, "pages": int, "max_threshold": int,
//     "types": [ { "pages": [int], "threshold": int, "prob": real } ],
//     "rule": { "name": string, "params": object } }
// Probabilities are written as decimal strings with 17 significant digits so
// files round-trip bit-identically; both strings and numbers are accepted on
// input.
json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& j);

json profile_to_json(const SingletonProfile& profile);
json profile_to_json(const ChainProfile& profile);
std::variant<SingletonProfile, ChainProfile> profile_from_json(const json& j,
                                                               const GameConfig& config);
json profiles_to_json(const std::vector<SingletonProfile>& profiles);
std::vector<SingletonProfile> singleton_profiles_from_json(const json& j,
                                                           const GameConfig& config);

json model_to_json(const MarkovUserModel& model);
MarkovUserModel model_from_json(const json& j);

json report_to_json(const EquilibriumReport& report);
json report_to_json(const PropertyReport& report);
json report_to_json(const PoaReport& report);
json optimum_to_json(const OptimumResult& opt);
json scenario_to_json(const Scenario& scenario);

/// Canonical text form: objects with sorted keys, two-space indentation, and
/// every float rendered with up to 17 significant digits. Identical values
/// always produce identical bytes.
std::string canonical_dump(const json& j, int indent = 2);

/// FNV-1a 64-bit digest, as 16 hex characters.
std::string content_digest(const std::string& bytes);

} // namespace searchgame
