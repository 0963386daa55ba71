#pragma once

#include "searchgame/game.hpp"
#include "searchgame/rules.hpp"
#include "searchgame/types.hpp"

namespace searchgame {

/// A complete game instance: parameters, type distribution and the selection
/// rule shared by all users.
struct Instance {
    GameConfig config;
    TypeDistribution dist;
    SelectionRule rule;

    /// Cross-field consistency: page counts, engine counts, thresholds and
    /// rule-specific constraints.
    void validate() const;

    bool is_singleton() const { return dist.is_singleton(); }
};

} // namespace searchgame
