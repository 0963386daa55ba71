#pragma once

#include <optional>
#include <string>
#include <vector>

namespace searchgame {

struct PropertyWitness {
    std::vector<double> q;
    int engine = -1;
    int coordinate = -1;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string detail;
};

/// Outcome of a sampled property check. A pass means "no violation found on
/// the sampled points", not a proof.
struct PropertyReport {
    std::string property;
    bool passed = false;
    bool strict = false;
    long points_checked = 0;
    // Property-specific margin: smallest second difference for convexity,
    // smallest passing epsilon for cross-concavity, smallest slack otherwise.
    double margin = 0.0;
    std::optional<PropertyWitness> witness;
    std::string note;
};

} // namespace searchgame
