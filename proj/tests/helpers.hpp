#pragma once

// Shared generators for the property tests. Everything is seeded explicitly;
// the same seed always produces the same fixtures.

#include <algorithm>
#include <set>
#include <vector>

#include "searchgame/game.hpp"
#include "searchgame/instance.hpp"
#include "searchgame/markov.hpp"

namespace testgen {

inline std::vector<double> random_weights(int count, searchgame::Rng& rng) {
    std::vector<double> w(static_cast<size_t>(count));
    double total = 0.0;
    for (double& x : w) {
        x = 0.05 + rng.uniform();
        total += x;
    }
    for (double& x : w) x /= total;
    return w;
}

inline searchgame::TypeDistribution random_singleton_dist(int pages, searchgame::Rng& rng) {
    return searchgame::TypeDistribution::singleton(random_weights(pages, rng), true);
}

inline searchgame::SingletonStrategy random_strategy(int pages, searchgame::Rng& rng) {
    return searchgame::SingletonStrategy(random_weights(pages, rng), true);
}

inline searchgame::SingletonProfile random_profile(int engines, int pages, searchgame::Rng& rng) {
    searchgame::SingletonProfile profile;
    for (int i = 0; i < engines; ++i) profile.push_back(random_strategy(pages, rng));
    return profile;
}

/// Random distribution over set-valued types with thresholds up to the cap;
/// singleton types are appended for any page left uncovered.
inline searchgame::TypeDistribution random_general_dist(int pages, int max_threshold,
                                                        searchgame::Rng& rng) {
    std::set<std::pair<std::vector<int>, int>> seen;
    std::vector<searchgame::TypeEntry> entries;
    std::vector<bool> covered(static_cast<size_t>(pages), false);
    const int want = 3 + rng.below(4);
    for (int t = 0; t < want; ++t) {
        std::vector<int> set;
        for (int p = 0; p < pages; ++p)
            if (rng.uniform() < 0.45) set.push_back(p);
        if (set.empty()) set.push_back(rng.below(pages));
        const int threshold = 1 + rng.below(max_threshold);
        if (!seen.insert({set, threshold}).second) continue;
        for (int p : set) covered[static_cast<size_t>(p)] = true;
        entries.push_back({searchgame::UserType{set, threshold}, 0.1 + rng.uniform()});
    }
    for (int p = 0; p < pages; ++p) {
        if (covered[static_cast<size_t>(p)]) continue;
        if (seen.insert({{p}, 1}).second)
            entries.push_back({searchgame::UserType{{p}, 1}, 0.1 + rng.uniform()});
    }
    return searchgame::TypeDistribution(std::move(entries), pages, /*normalize=*/true);
}

inline searchgame::PrefixChainStrategy random_chain_strategy(const searchgame::GameConfig& config,
                                                             searchgame::Rng& rng) {
    const int atoms = 1 + rng.below(3);
    std::vector<searchgame::ChainAtom> list;
    std::set<std::vector<int>> seen;
    for (int a = 0; a < atoms; ++a) {
        std::vector<int> pool(static_cast<size_t>(config.num_pages));
        for (int p = 0; p < config.num_pages; ++p) pool[static_cast<size_t>(p)] = p;
        for (int i = config.num_pages - 1; i > 0; --i)
            std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(rng.below(i + 1))]);
        pool.resize(static_cast<size_t>(config.max_threshold));
        if (!seen.insert(pool).second) continue;
        list.push_back({std::move(pool), 0.1 + rng.uniform()});
    }
    return searchgame::PrefixChainStrategy(std::move(list), config, /*normalize=*/true);
}

inline searchgame::ChainProfile random_chain_profile(const searchgame::GameConfig& config,
                                                     searchgame::Rng& rng) {
    searchgame::ChainProfile profile;
    for (int i = 0; i < config.num_engines; ++i)
        profile.push_back(random_chain_strategy(config, rng));
    return profile;
}

inline searchgame::SelectionRule random_rule(int engines, searchgame::Rng& rng) {
    switch (rng.below(4)) {
    case 0: return searchgame::SelectionRule::proportional(engines);
    case 1: return searchgame::SelectionRule::markovian_basic(engines);
    case 2: return searchgame::SelectionRule::majority(engines);
    default: {
        std::vector<double> w(static_cast<size_t>(engines));
        for (double& x : w) x = 0.5 + 2.0 * rng.uniform();
        return searchgame::SelectionRule::weighted_proportional(std::move(w));
    }
    }
}

/// Row-stochastic matrix with strictly positive entries.
inline searchgame::Matrix random_stochastic(int states, searchgame::Rng& rng) {
    searchgame::Matrix m(static_cast<size_t>(states));
    for (auto& row : m) {
        row.resize(static_cast<size_t>(states));
        double total = 0.0;
        for (double& x : row) {
            x = 0.05 + rng.uniform();
            total += x;
        }
        for (double& x : row) x /= total;
    }
    return m;
}

inline searchgame::MarkovUserModel random_model(int states, searchgame::Rng& rng) {
    return searchgame::MarkovUserModel(random_stochastic(states, rng),
                                       random_stochastic(states, rng));
}

/// Strictly monotone model: the success matrix mixes the failure matrix with
/// extra probability of staying put, so staying is strictly more likely after
/// success and the post-exit distributions coincide.
inline searchgame::MarkovUserModel random_strictly_monotone_model(int states,
                                                                  searchgame::Rng& rng) {
    const searchgame::Matrix failure = random_stochastic(states, rng);
    const double alpha = 0.1 + 0.8 * rng.uniform();
    searchgame::Matrix success = failure;
    for (int i = 0; i < states; ++i)
        for (int j = 0; j < states; ++j)
            success[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                alpha * (i == j ? 1.0 : 0.0) +
                (1.0 - alpha) * failure[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return searchgame::MarkovUserModel(std::move(success), failure);
}

} // namespace testgen
