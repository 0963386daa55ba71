#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "searchgame/instance.hpp"

namespace searchgame {

struct BestResponse {
    SingletonStrategy strategy;
    double payoff = 0.0;
};

struct ChainBestResponse {
    std::vector<int> slots;
    double payoff = 0.0;
};

/// Heuristic payoff maximizer over the page simplex for singleton instances:
/// projected gradient ascent from multiple starts (vertices, the type
/// distribution itself, random points) followed by pairwise transfer polish.
/// Certification goes through the deterministic enumerator and the shift
/// search, not through this maximizer.
BestResponse best_response_singleton(const SelectionRule& rule, const TypeDistribution& dist,
                                     double beta, const SingletonProfile& opponents,
                                     int engine_index, std::uint64_t seed = 42);

/// Exact best deterministic strategy by enumeration of display chains.
/// Ties break toward the lexicographically smallest chain.
ChainBestResponse best_response_deterministic(const SelectionRule& rule,
                                              const TypeDistribution& dist, double beta,
                                              const GameConfig& config,
                                              const ChainProfile& opponents, int engine_index);

struct Deviation {
    int engine = -1;
    std::optional<SingletonStrategy> strategy;
    std::optional<std::vector<int>> chain;
    double payoff = 0.0;
    double gain = 0.0;
};

struct EquilibriumReport {
    std::vector<double> regrets;
    std::vector<std::optional<Deviation>> witnesses;
    double epsilon = 0.0;
    bool is_equilibrium = false;
    std::vector<double> payoffs;
    double welfare_value = 0.0;
};

/// Per-engine regret against the strongest deviation found by the
/// deterministic enumerator, the continuous maximizer and the shift search.
EquilibriumReport verify_epsilon_nash(const SingletonProfile& profile, const Instance& instance,
                                      double epsilon = 1e-6, std::uint64_t seed = 42);
EquilibriumReport verify_epsilon_nash(const ChainProfile& profile, const Instance& instance,
                                      double epsilon = 1e-6);

/// The display-factor-one proportional-rule equilibrium: play each page with
/// its demand probability.
SingletonStrategy symmetric_equilibrium_beta1_proportional(const TypeDistribution& dist);

struct SymmetricSolverState {
    double z = 0.0;
    double lambda_prime = 0.0;
    SingletonStrategy page_probs;
};

struct HessianCertificate {
    double beta_threshold = 0.0; // 1 - 1/k: above it the payoff is globally concave
    bool globally_concave = false;
    std::vector<double> diagonal; // second derivative of the payoff per page at the symmetric point
    bool negative_at_symmetric_point = false;
};

/// Symmetric equilibrium candidate of the proportional rule for display
/// factor beta in (0, 1]: solves sum_n G(n) / (lambda - z G(n)) = 1 by
/// bracketed bisection and returns page probabilities G(n) / (lambda - z G(n))
/// together with a concavity certificate.
std::pair<SymmetricSolverState, HessianCertificate>
symmetric_equilibrium_proportional(const TypeDistribution& dist, double beta, int engines);

/// Enumerates all profiles of denominator-m grid strategies, keeps those that
/// are epsilon-equilibria against grid deviations, and refines each with
/// verify_epsilon_nash. Guarded to desk scale.
std::vector<std::pair<SingletonProfile, EquilibriumReport>>
brute_force_equilibria(const Instance& instance, int grid_m, double epsilon,
                       std::uint64_t seed = 42);

/// First deviation with gain above `min_gain`, trying page vertices first and
/// then small probability shifts between page pairs.
std::optional<Deviation> find_improving_deviation(const SingletonProfile& profile,
                                                  const Instance& instance,
                                                  double min_gain = 1e-9);

} // namespace searchgame
