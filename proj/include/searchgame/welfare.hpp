#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "searchgame/instance.hpp"

namespace searchgame {

enum class OptMode { Exhaustive, TopK, Greedy };

struct OptimumResult {
    ChainProfile profile;
    double welfare = 0.0; // coverage: mass of types some engine satisfies
    OptMode method = OptMode::Exhaustive;
    bool approximate = false; // greedy results are lower bounds
};

/// Welfare-maximizing deterministic profile. TopK assigns the highest-demand
/// pages of a singleton instance; Exhaustive enumerates chain profiles (desk
/// scale, guarded); Greedy is lazy greedy coverage, flagged approximate.
OptimumResult social_optimum(const TypeDistribution& dist, const GameConfig& config, OptMode mode);

struct PoaReport {
    std::string status; // "ok" or "no-equilibrium"
    double opt_welfare = 0.0;
    std::vector<double> equilibrium_welfares;
    std::optional<double> poa;
    std::optional<double> pos;
};

double price_of_anarchy(const Instance& instance, const std::vector<SingletonProfile>& equilibria,
                        const OptimumResult& opt);
double price_of_stability(const Instance& instance, const std::vector<SingletonProfile>& equilibria,
                          const OptimumResult& opt);
/// Non-throwing form used by reporting: an empty equilibrium list yields the
/// explicit "no-equilibrium" status.
PoaReport poa_report(const Instance& instance, const std::vector<SingletonProfile>& equilibria,
                     const OptimumResult& opt);
PoaReport poa_report_welfares(const std::vector<double>& equilibrium_welfares,
                              const OptimumResult& opt);

/// An engine's deterministic strategy viewed as a set of (slot, page) pairs;
/// slots are 1-based and at most the patience cap, pages distinct per engine.
using SlotAssignment = std::vector<std::pair<int, int>>;

/// Welfare of a profile of such partial assignments under `rule`.
double assignment_welfare(const std::vector<SlotAssignment>& profile, const SelectionRule& rule,
                          const GameConfig& config, const TypeDistribution& dist);

/// Monotonicity and submodularity of the welfare over nested assignment
/// profiles, sampled on small instances.
PropertyReport check_welfare_structure(const TypeDistribution& dist, const GameConfig& config,
                                       const SelectionRule& rule, int samples = 100,
                                       std::uint64_t seed = 42);

} // namespace searchgame
