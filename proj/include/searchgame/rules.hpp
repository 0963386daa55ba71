#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "searchgame/markov.hpp"
#include "searchgame/report.hpp"
#include "searchgame/types.hpp"

namespace searchgame {

enum class RuleKind {
    Proportional,
    MarkovianBasic,
    Majority,
    WeightedProportional,
    GammaPower,
    TruncatedIndifferent,
    InducedMarkov,
};

/// A user selection rule: maps a profile of per-engine satisfaction
/// probabilities to a distribution over engines.
class SelectionRule {
public:
    static SelectionRule proportional(int engines);
    static SelectionRule markovian_basic(int engines);
    static SelectionRule majority(int engines);
    static SelectionRule weighted_proportional(std::vector<double> weights);
    /// Cyclic three-engine rule with shares q_i * 2^(q_{i+1} - q_{i+2}).
    static SelectionRule gamma_power();
    /// Fixture rule on pages+1 engines whose first `pages` components ignore
    /// the own satisfaction probability (it is not non-indifferent).
    static SelectionRule truncated_indifferent(int pages);
    static SelectionRule induced_markov(MarkovUserModel model);

    std::vector<double> evaluate(const SatisfactionProfile& q) const;

    int engine_count() const { return engines_; }
    RuleKind kind() const { return kind_; }
    /// Invariant under relabeling of the engines (the cyclic gamma-power rule
    /// is not).
    bool is_symmetric() const;
    std::string name() const;

    const std::vector<double>& weights() const { return weights_; }
    int pages() const { return pages_; }
    const MarkovUserModel* markov_model() const { return model_.get(); }

private:
    SelectionRule(RuleKind kind, int engines) : kind_(kind), engines_(engines) {}

    RuleKind kind_;
    int engines_;
    std::vector<double> weights_;
    int pages_ = 0;
    std::shared_ptr<const MarkovUserModel> model_;
};

/// Callable form accepted by the property checks so that ad-hoc fixtures can
/// be certified alongside the built-in rules.
using RuleFn = std::function<std::vector<double>(const SatisfactionProfile&)>;

RuleFn rule_fn(const SelectionRule& rule);

// Sampled certification of the structural properties the equilibrium results
// rest on. Grid plus seeded random profiles; a pass means no violation found.
PropertyReport check_monotone(const RuleFn& f, int engines, double grid_step = 1.0 / 16,
                              int samples = 200, std::uint64_t seed = 42);
PropertyReport check_non_indifferent(const RuleFn& f, int engines, double grid_step = 1.0 / 16,
                                     std::uint64_t seed = 42);
PropertyReport check_convex(const RuleFn& f, int engines, double grid_step = 1.0 / 16,
                            std::uint64_t seed = 42);
PropertyReport check_cross_concave(const RuleFn& f, int engines,
                                   std::vector<double> epsilon_grid = {1.0 / 64, 1.0 / 128, 1.0 / 256},
                                   std::uint64_t seed = 42);

PropertyReport check_monotone(const SelectionRule& rule, double grid_step = 1.0 / 16,
                              int samples = 200, std::uint64_t seed = 42);
PropertyReport check_non_indifferent(const SelectionRule& rule, double grid_step = 1.0 / 16,
                                     std::uint64_t seed = 42);
PropertyReport check_convex(const SelectionRule& rule, double grid_step = 1.0 / 16,
                            std::uint64_t seed = 42);
PropertyReport check_cross_concave(const SelectionRule& rule,
                                   std::vector<double> epsilon_grid = {1.0 / 64, 1.0 / 128, 1.0 / 256},
                                   std::uint64_t seed = 42);

} // namespace searchgame
