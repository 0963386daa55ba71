#include "searchgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "searchgame/instance.hpp"

namespace searchgame {

double satisfaction_probability(const PrefixChainStrategy& strategy, const UserType& type,
                                const GameConfig& config) {
    if (type.threshold > config.max_threshold)
        throw ValidationError("type threshold " + std::to_string(type.threshold) +
                              " exceeds max_threshold " + std::to_string(config.max_threshold));
    double p = 0.0;
    for (const auto& atom : strategy.atoms()) {
        for (int slot = 0; slot < type.threshold; ++slot) {
            if (type.desires(atom.slots[static_cast<size_t>(slot)])) {
                p += atom.weight;
                break;
            }
        }
    }
    return std::min(p, 1.0);
}

SatisfactionProfile profile_satisfaction(const ChainProfile& profile, const UserType& type,
                                         const GameConfig& config) {
    if (static_cast<int>(profile.size()) != config.num_engines)
        throw ValidationError("profile has " + std::to_string(profile.size()) +
                              " strategies for " + std::to_string(config.num_engines) + " engines");
    SatisfactionProfile q;
    q.reserve(profile.size());
    for (const auto& s : profile) q.push_back(satisfaction_probability(s, type, config));
    return q;
}

SatisfactionProfile profile_satisfaction(const SingletonProfile& profile, int page) {
    SatisfactionProfile q;
    q.reserve(profile.size());
    for (const auto& s : profile) q.push_back(s[page]);
    return q;
}

namespace {

template <typename ProfileT, typename SatFn>
std::vector<double> payoffs_impl(const ProfileT& profile, const SelectionRule& rule,
                                 const GameConfig& config, const TypeDistribution& dist,
                                 SatFn&& satisfaction) {
    const int k = config.num_engines;
    if (static_cast<int>(profile.size()) != k)
        throw ValidationError("profile size does not match the engine count");
    if (rule.engine_count() != k)
        throw ValidationError("rule is configured for a different engine count");
    std::vector<double> payoff(static_cast<size_t>(k), 0.0);
    for (const auto& entry : dist.entries()) {
        const SatisfactionProfile q = satisfaction(entry);
        const std::vector<double> f = rule.evaluate(q);
        for (int i = 0; i < k; ++i)
            payoff[static_cast<size_t>(i)] +=
                entry.prob * f[static_cast<size_t>(i)] *
                (config.beta + (1.0 - config.beta) * q[static_cast<size_t>(i)]);
    }
    return payoff;
}

template <typename ProfileT, typename SatFn>
double welfare_impl(const ProfileT& profile, const SelectionRule& rule, const GameConfig& config,
                    const TypeDistribution& dist, SatFn&& satisfaction) {
    const int k = config.num_engines;
    if (static_cast<int>(profile.size()) != k)
        throw ValidationError("profile size does not match the engine count");
    if (rule.engine_count() != k)
        throw ValidationError("rule is configured for a different engine count");
    double w = 0.0;
    for (const auto& entry : dist.entries()) {
        const SatisfactionProfile q = satisfaction(entry);
        const std::vector<double> f = rule.evaluate(q);
        double chosen = 0.0;
        for (int i = 0; i < k; ++i) chosen += f[static_cast<size_t>(i)] * q[static_cast<size_t>(i)];
        w += entry.prob * chosen;
    }
    return w;
}

} // namespace

std::vector<double> engine_payoffs(const ChainProfile& profile, const SelectionRule& rule,
                                   const GameConfig& config, const TypeDistribution& dist) {
    return payoffs_impl(profile, rule, config, dist, [&](const TypeEntry& entry) {
        return profile_satisfaction(profile, entry.type, config);
    });
}

std::vector<double> engine_payoffs(const SingletonProfile& profile, const SelectionRule& rule,
                                   const GameConfig& config, const TypeDistribution& dist) {
    return payoffs_impl(profile, rule, config, dist, [&](const TypeEntry& entry) {
        return profile_satisfaction(profile, entry.type.pages[0]);
    });
}

double welfare(const ChainProfile& profile, const SelectionRule& rule, const GameConfig& config,
               const TypeDistribution& dist) {
    return welfare_impl(profile, rule, config, dist, [&](const TypeEntry& entry) {
        return profile_satisfaction(profile, entry.type, config);
    });
}

double welfare(const SingletonProfile& profile, const SelectionRule& rule, const GameConfig& config,
               const TypeDistribution& dist) {
    return welfare_impl(profile, rule, config, dist, [&](const TypeEntry& entry) {
        return profile_satisfaction(profile, entry.type.pages[0]);
    });
}

namespace {
constexpr int kGeneralPositionSupportCap = 20;
}

GeneralPositionReport is_general_position(const TypeDistribution& dist) {
    const int m = dist.support_size();
    if (m > kGeneralPositionSupportCap) {
        GeneralPositionReport report;
        report.status = GeneralPosition::Unchecked;
        return report;
    }
    const auto& entries = dist.entries();
    const std::uint32_t count = 1u << m;
    std::vector<std::pair<double, std::uint32_t>> sums;
    sums.reserve(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) s += entries[static_cast<size_t>(i)].prob;
        sums.emplace_back(s, mask);
    }
    std::sort(sums.begin(), sums.end());
    for (std::uint32_t idx = 1; idx < count; ++idx) {
        if (sums[idx].first - sums[idx - 1].first <= kProbTolerance) {
            GeneralPositionReport report;
            report.status = GeneralPosition::Degenerate;
            for (int i = 0; i < m; ++i) {
                if (sums[idx - 1].second & (1u << i)) report.witness_a.push_back(i);
                if (sums[idx].second & (1u << i)) report.witness_b.push_back(i);
            }
            return report;
        }
    }
    GeneralPositionReport report;
    report.status = GeneralPosition::InPosition;
    return report;
}

TypeDistribution perturb_general_position(const TypeDistribution& dist, double scale,
                                          std::uint64_t seed) {
    if (!(scale > 0.0)) throw ValidationError("perturbation scale must be positive");
    const bool checkable = dist.support_size() <= kGeneralPositionSupportCap;
    const int max_attempts = checkable ? 16 : 1;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt));
        std::vector<TypeEntry> entries = dist.entries();
        for (auto& e : entries) e.prob *= 1.0 + scale * rng.uniform();
        TypeDistribution perturbed(std::move(entries), dist.num_pages(), /*normalize=*/true);
        if (!checkable || is_general_position(perturbed).status == GeneralPosition::InPosition)
            return perturbed;
    }
    throw SolverError("perturbation failed to reach general position; try a larger scale");
}

void Instance::validate() const {
    config.validate();
    if (dist.num_pages() != config.num_pages)
        throw ValidationError("distribution and config disagree on the number of pages");
    if (dist.max_threshold() > config.max_threshold)
        throw ValidationError("a type's threshold exceeds the configured maximum");
    if (rule.engine_count() != config.num_engines)
        throw ValidationError("rule and config disagree on the number of engines");
    if (rule.kind() == RuleKind::TruncatedIndifferent && rule.pages() != config.num_pages)
        throw ValidationError("the truncated rule must use the instance's page count");
}

} // namespace searchgame
