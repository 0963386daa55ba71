#pragma once

#include <optional>
#include <string>
#include <vector>

#include "searchgame/instance.hpp"

namespace searchgame {

struct ScenarioParams {
    std::optional<int> engines;
    std::optional<int> pages;
    std::optional<double> beta;
    std::uint64_t seed = 42;
    double perturb_scale = 1e-6;
};

/// Quantitative claims a scenario carries, checked by the acceptance suite.
struct ExpectedClaims {
    std::optional<double> opt_welfare;
    std::optional<double> equilibrium_welfare;
    std::optional<double> poa;
    std::optional<double> pos;
    std::optional<double> equilibrium_epsilon; // the named profiles verify at this tolerance
    std::optional<bool> has_pure_equilibrium;
    std::vector<std::string> notes;
};

struct Scenario {
    std::string name;
    std::string description;
    Instance instance;
    /// Named equilibrium candidates (empty for the non-existence instance).
    std::vector<SingletonProfile> profiles;
    ExpectedClaims expected;
};

struct ScenarioInfo {
    std::string name;
    std::string description;
    std::string defaults;
};

/// Deterministic generator for every named instance family; same (name,
/// params) always yields the same scenario.
Scenario generate_scenario(const std::string& name, const ScenarioParams& params = {});

const std::vector<ScenarioInfo>& scenario_catalog();

} // namespace searchgame
