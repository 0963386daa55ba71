#pragma once

#include <cstdint>
#include <vector>

#include "searchgame/rules.hpp"
#include "searchgame/types.hpp"

namespace searchgame {

/// Probability that `strategy` satisfies a user of `type`: the weight of
/// atoms whose first `threshold` slots hit the desired set.
double satisfaction_probability(const PrefixChainStrategy& strategy, const UserType& type,
                                const GameConfig& config);

SatisfactionProfile profile_satisfaction(const ChainProfile& profile, const UserType& type,
                                         const GameConfig& config);
SatisfactionProfile profile_satisfaction(const SingletonProfile& profile, int page);

/// Expected payoff per engine: sum over types of
/// prob * f_i(q) * (beta + (1-beta) q_i).
std::vector<double> engine_payoffs(const ChainProfile& profile, const SelectionRule& rule,
                                   const GameConfig& config, const TypeDistribution& dist);
std::vector<double> engine_payoffs(const SingletonProfile& profile, const SelectionRule& rule,
                                   const GameConfig& config, const TypeDistribution& dist);

/// Probability that a user drawn from the distribution is satisfied by the
/// engine it selects.
double welfare(const ChainProfile& profile, const SelectionRule& rule, const GameConfig& config,
               const TypeDistribution& dist);
double welfare(const SingletonProfile& profile, const SelectionRule& rule, const GameConfig& config,
               const TypeDistribution& dist);

enum class GeneralPosition { InPosition, Degenerate, Unchecked };

struct GeneralPositionReport {
    GeneralPosition status = GeneralPosition::Unchecked;
    // Entry indices of two distinct subsets with (numerically) equal
    // probability mass, present only when Degenerate.
    std::vector<int> witness_a;
    std::vector<int> witness_b;
};

/// Exact all-subset-sums check, capped at support size 20; larger supports
/// report Unchecked rather than silently passing.
GeneralPositionReport is_general_position(const TypeDistribution& dist);

/// Multiplies every weight by (1 + u * scale) with seeded uniform u,
/// renormalizes, and re-checks when the support is small enough.
TypeDistribution perturb_general_position(const TypeDistribution& dist, double scale,
                                          std::uint64_t seed);

} // namespace searchgame
