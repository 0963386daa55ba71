#include "searchgame/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

namespace searchgame {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

bool UserType::desires(int page) const {
    return std::binary_search(pages.begin(), pages.end(), page);
}

void GameConfig::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ValidationError("beta must lie in [0,1], got " + format_real(beta));
    if (num_engines < 2)
        throw ValidationError("at least two engines are required, got " + std::to_string(num_engines));
    if (num_pages < 1)
        throw ValidationError("at least one page is required, got " + std::to_string(num_pages));
    if (max_threshold < 1)
        throw ValidationError("max_threshold must be positive, got " + std::to_string(max_threshold));
    if (max_threshold > num_pages)
        throw ValidationError("max_threshold cannot exceed the number of pages");
}

namespace {

void validate_user_type(const UserType& type, int num_pages) {
    if (type.pages.empty())
        throw ValidationError("a user type must desire at least one page");
    if (!std::is_sorted(type.pages.begin(), type.pages.end()))
        throw ValidationError("desired pages must be sorted");
    if (std::adjacent_find(type.pages.begin(), type.pages.end()) != type.pages.end())
        throw ValidationError("desired pages must be distinct");
    if (type.pages.front() < 0 || type.pages.back() >= num_pages)
        throw ValidationError("desired page index out of range");
    if (type.threshold < 1)
        throw ValidationError("patience threshold must be positive");
}

} // namespace

TypeDistribution::TypeDistribution(std::vector<TypeEntry> entries, int num_pages, bool normalize)
    : entries_(std::move(entries)), num_pages_(num_pages) {
    if (num_pages_ < 1) throw ValidationError("a distribution needs at least one page");
    if (entries_.empty()) throw ValidationError("a type distribution cannot be empty");

    double total = 0.0;
    for (auto& e : entries_) {
        validate_user_type(e.type, num_pages_);
        if (!(e.prob > 0.0))
            throw ValidationError("type probabilities must be positive");
        total += e.prob;
    }
    if (normalize) {
        for (auto& e : entries_) e.prob /= total;
    } else if (std::abs(total - 1.0) > kProbTolerance) {
        throw ValidationError("type probabilities sum to " + format_real(total) +
                              ", expected 1 within 1e-12");
    }
    for (const auto& e : entries_)
        if (e.prob > 1.0 + kProbTolerance)
            throw ValidationError("type probability exceeds 1");

    std::set<std::pair<std::vector<int>, int>> seen;
    std::vector<bool> covered(static_cast<size_t>(num_pages_), false);
    for (const auto& e : entries_) {
        if (!seen.insert({e.type.pages, e.type.threshold}).second)
            throw ValidationError("duplicate user type in distribution");
        for (int p : e.type.pages) covered[static_cast<size_t>(p)] = true;
    }
    for (int n = 0; n < num_pages_; ++n)
        if (!covered[static_cast<size_t>(n)])
            throw ValidationError("page " + std::to_string(n) + " satisfies no type in the support");
}

TypeDistribution TypeDistribution::singleton(const std::vector<double>& page_probs, bool normalize) {
    std::vector<TypeEntry> entries;
    entries.reserve(page_probs.size());
    for (size_t n = 0; n < page_probs.size(); ++n)
        entries.push_back({UserType{{static_cast<int>(n)}, 1}, page_probs[n]});
    return TypeDistribution(std::move(entries), static_cast<int>(page_probs.size()), normalize);
}

int TypeDistribution::max_threshold() const {
    int t = 1;
    for (const auto& e : entries_) t = std::max(t, e.type.threshold);
    return t;
}

bool TypeDistribution::is_singleton() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const TypeEntry& e) {
        return e.type.pages.size() == 1 && e.type.threshold == 1;
    });
}

std::vector<double> TypeDistribution::page_probs() const {
    if (!is_singleton())
        throw ValidationError("page_probs is defined for singleton distributions only");
    std::vector<double> probs(static_cast<size_t>(num_pages_), 0.0);
    for (const auto& e : entries_) probs[static_cast<size_t>(e.type.pages[0])] += e.prob;
    return probs;
}

PrefixChainStrategy::PrefixChainStrategy(std::vector<ChainAtom> atoms, const GameConfig& config,
                                         bool normalize)
    : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw ValidationError("a strategy needs at least one chain");
    double total = 0.0;
    for (auto& atom : atoms_) {
        if (static_cast<int>(atom.slots.size()) != config.max_threshold)
            throw ValidationError("every chain must fill exactly max_threshold slots");
        std::set<int> seen;
        for (int page : atom.slots) {
            if (page < 0 || page >= config.num_pages)
                throw ValidationError("chain page index out of range");
            if (!seen.insert(page).second)
                throw ValidationError("chain pages must be distinct");
        }
        if (!(atom.weight > 0.0)) throw ValidationError("chain weights must be positive");
        total += atom.weight;
    }
    if (normalize) {
        for (auto& atom : atoms_) atom.weight /= total;
    } else if (std::abs(total - 1.0) > kProbTolerance) {
        throw ValidationError("chain weights sum to " + format_real(total) +
                              ", expected 1 within 1e-12");
    }
}

PrefixChainStrategy PrefixChainStrategy::deterministic(std::vector<int> slots,
                                                       const GameConfig& config) {
    return PrefixChainStrategy({ChainAtom{std::move(slots), 1.0}}, config);
}

SingletonStrategy::SingletonStrategy(std::vector<double> probs, bool normalize)
    : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("a singleton strategy needs at least one page");
    double total = 0.0;
    for (double p : probs_) {
        if (std::isnan(p) || p < -kProbTolerance || p > 1.0 + kProbTolerance)
            throw ValidationError("page probabilities must lie in [0,1]");
        total += p;
    }
    if (normalize) {
        if (!(total > 0.0)) throw ValidationError("cannot normalize a zero vector");
        for (double& p : probs_) p /= total;
    } else if (std::abs(total - 1.0) > kProbTolerance) {
        throw ValidationError("page probabilities sum to " + format_real(total) +
                              ", expected 1 within 1e-12");
    }
    for (double& p : probs_) p = std::clamp(p, 0.0, 1.0);
}

SingletonStrategy SingletonStrategy::deterministic(int page, int num_pages) {
    if (page < 0 || page >= num_pages) throw ValidationError("page index out of range");
    std::vector<double> probs(static_cast<size_t>(num_pages), 0.0);
    probs[static_cast<size_t>(page)] = 1.0;
    return SingletonStrategy(std::move(probs));
}

PrefixChainStrategy to_chain_strategy(const SingletonStrategy& s, const GameConfig& config) {
    if (config.max_threshold != 1)
        throw ValidationError("singleton strategies convert only when max_threshold is 1");
    std::vector<ChainAtom> atoms;
    for (int n = 0; n < s.num_pages(); ++n)
        if (s[n] > 0.0) atoms.push_back({{n}, s[n]});
    return PrefixChainStrategy(std::move(atoms), config, /*normalize=*/true);
}

ChainProfile to_chain_profile(const SingletonProfile& profile, const GameConfig& config) {
    ChainProfile out;
    out.reserve(profile.size());
    for (const auto& s : profile) out.push_back(to_chain_strategy(s, config));
    return out;
}

} // namespace searchgame
