#pragma once

#include <vector>

#include "searchgame/common.hpp"

namespace searchgame {

/// A searcher type: the set of pages that would satisfy the search and the
/// number of result slots examined before giving up.
struct UserType {
    std::vector<int> pages; // sorted, distinct, nonempty
    int threshold = 1;

    bool desires(int page) const;
    bool operator==(const UserType&) const = default;
};

struct GameConfig {
    double beta = 0.0;
    int num_engines = 2;
    int num_pages = 1;
    int max_threshold = 1;

    void validate() const;
};

struct TypeEntry {
    UserType type;
    double prob = 0.0;
};

/// The commonly known distribution over searcher types. Probabilities must
/// sum to one, every page must be desired by at least one type, and entries
/// must be distinct. With `normalize` set, weights are rescaled to sum to one
/// instead of being rejected.
class TypeDistribution {
public:
    TypeDistribution(std::vector<TypeEntry> entries, int num_pages, bool normalize = false);

    /// Distribution over singleton types with threshold one; page_probs[n] is
    /// the probability of desiring page n.
    static TypeDistribution singleton(const std::vector<double>& page_probs, bool normalize = false);

    const std::vector<TypeEntry>& entries() const { return entries_; }
    int num_pages() const { return num_pages_; }
    int support_size() const { return static_cast<int>(entries_.size()); }
    int max_threshold() const;

    /// True when every type desires exactly one page with threshold one.
    bool is_singleton() const;

    /// Per-page probabilities of a singleton distribution (zero for pages
    /// missing from the support is impossible by construction).
    std::vector<double> page_probs() const;

private:
    std::vector<TypeEntry> entries_;
    int num_pages_ = 0;
};

/// One nested display chain C_1 c C_2 c ... c C_T identified by the order of
/// pages that builds it: slots[j] is the page in slot j+1, C_t is the first t
/// entries.
struct ChainAtom {
    std::vector<int> slots;
    double weight = 0.0;
};

/// A pure engine strategy: a distribution over display chains truncated at
/// the game's maximum patience threshold. Deterministic iff a single atom.
class PrefixChainStrategy {
public:
    PrefixChainStrategy(std::vector<ChainAtom> atoms, const GameConfig& config, bool normalize = false);

    static PrefixChainStrategy deterministic(std::vector<int> slots, const GameConfig& config);

    const std::vector<ChainAtom>& atoms() const { return atoms_; }
    bool is_deterministic() const { return atoms_.size() == 1; }

private:
    std::vector<ChainAtom> atoms_;
};

/// A strategy of the singleton game: the probability of displaying each page
/// in the first slot.
class SingletonStrategy {
public:
    explicit SingletonStrategy(std::vector<double> probs, bool normalize = false);

    static SingletonStrategy deterministic(int page, int num_pages);

    const std::vector<double>& probs() const { return probs_; }
    double operator[](int page) const { return probs_[static_cast<size_t>(page)]; }
    int num_pages() const { return static_cast<int>(probs_.size()); }

    bool operator==(const SingletonStrategy&) const = default;

private:
    std::vector<double> probs_;
};

using SatisfactionProfile = std::vector<double>;
using SingletonProfile = std::vector<SingletonStrategy>;
using ChainProfile = std::vector<PrefixChainStrategy>;

PrefixChainStrategy to_chain_strategy(const SingletonStrategy& s, const GameConfig& config);
ChainProfile to_chain_profile(const SingletonProfile& profile, const GameConfig& config);

} // namespace searchgame
