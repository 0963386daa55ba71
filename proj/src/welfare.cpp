#include "searchgame/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "searchgame/game.hpp"

namespace searchgame {

namespace {

/// All display chains in lexicographic order, as ordered page tuples.
std::vector<std::vector<int>> enumerate_chains(int pages, int depth_cap, double max_count) {
    double count = 1.0;
    for (int i = 0; i < depth_cap; ++i) count *= static_cast<double>(pages - i);
    if (count > max_count)
        throw ValidationError("chain enumeration would visit " + format_real(count) +
                              " chains; the cap is " + format_real(max_count));
    std::vector<std::vector<int>> chains;
    std::vector<int> slots;
    std::vector<bool> used(static_cast<size_t>(pages), false);
    auto dfs = [&](auto&& self, int depth) -> void {
        if (depth == depth_cap) {
            chains.push_back(slots);
            return;
        }
        for (int page = 0; page < pages; ++page) {
            if (used[static_cast<size_t>(page)]) continue;
            used[static_cast<size_t>(page)] = true;
            slots.push_back(page);
            self(self, depth + 1);
            slots.pop_back();
            used[static_cast<size_t>(page)] = false;
        }
    };
    dfs(dfs, 0);
    return chains;
}

bool chain_hits(const std::vector<int>& slots, const UserType& type) {
    const int depth = std::min<int>(type.threshold, static_cast<int>(slots.size()));
    for (int s = 0; s < depth; ++s)
        if (type.desires(slots[static_cast<size_t>(s)])) return true;
    return false;
}

double binomial(double n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= (n - k + i) / static_cast<double>(i);
    return r;
}

} // namespace

OptimumResult social_optimum(const TypeDistribution& dist, const GameConfig& config,
                             OptMode mode) {
    config.validate();
    const int k = config.num_engines;
    const int n = config.num_pages;

    if (mode == OptMode::TopK) {
        if (!dist.is_singleton())
            throw ValidationError("the top-k optimum applies to singleton instances only");
        const std::vector<double> gamma = dist.page_probs();
        std::vector<int> order(gamma.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return gamma[static_cast<size_t>(a)] > gamma[static_cast<size_t>(b)]; });
        OptimumResult result;
        result.method = OptMode::TopK;
        double value = 0.0;
        for (int i = 0; i < k; ++i) {
            const int page = order[static_cast<size_t>(i % n)];
            if (i < n) value += gamma[static_cast<size_t>(page)];
            // Pad the chain with arbitrary distinct pages when the patience
            // cap exceeds one; only the first slot matters for singleton types.
            std::vector<int> slots{page};
            for (int other = 0; static_cast<int>(slots.size()) < config.max_threshold; ++other)
                if (other != page) slots.push_back(other);
            result.profile.push_back(PrefixChainStrategy::deterministic(std::move(slots), config));
        }
        result.welfare = value;
        return result;
    }

    const auto chains = enumerate_chains(n, config.max_threshold, 1e6);
    const auto& entries = dist.entries();
    const size_t types = entries.size();

    // Per-chain coverage bitmask over the type support.
    const size_t blocks = (types + 63) / 64;
    std::vector<std::vector<std::uint64_t>> masks(chains.size(),
                                                  std::vector<std::uint64_t>(blocks, 0));
    for (size_t c = 0; c < chains.size(); ++c)
        for (size_t t = 0; t < types; ++t)
            if (chain_hits(chains[c], entries[t].type)) masks[c][t / 64] |= 1ull << (t % 64);

    auto mass_of = [&](const std::vector<std::uint64_t>& covered) {
        double w = 0.0;
        for (size_t t = 0; t < types; ++t)
            if (covered[t / 64] & (1ull << (t % 64))) w += entries[t].prob;
        return w;
    };

    if (mode == OptMode::Exhaustive) {
        // Coverage is symmetric across engines, so enumerate multisets of
        // chains (non-decreasing index tuples).
        const double profiles = binomial(static_cast<double>(chains.size()) + k - 1, k);
        if (profiles > 1e6)
            throw ValidationError("exhaustive optimum would visit " + format_real(profiles) +
                                  " profiles; the cap is 1e6");
        std::vector<size_t> pick(static_cast<size_t>(k), 0);
        std::vector<size_t> best_pick;
        double best = -1.0;
        std::vector<std::uint64_t> covered(blocks, 0);
        auto rec = [&](auto&& self, int engine, size_t from) -> void {
            if (engine == k) {
                std::fill(covered.begin(), covered.end(), 0);
                for (int e = 0; e < k; ++e)
                    for (size_t b = 0; b < blocks; ++b)
                        covered[b] |= masks[pick[static_cast<size_t>(e)]][b];
                const double w = mass_of(covered);
                if (w > best) {
                    best = w;
                    best_pick = pick;
                }
                return;
            }
            for (size_t c = from; c < chains.size(); ++c) {
                pick[static_cast<size_t>(engine)] = c;
                self(self, engine + 1, c);
            }
        };
        rec(rec, 0, 0);
        OptimumResult result;
        result.method = OptMode::Exhaustive;
        result.welfare = best;
        for (int e = 0; e < k; ++e)
            result.profile.push_back(
                PrefixChainStrategy::deterministic(chains[best_pick[static_cast<size_t>(e)]], config));
        return result;
    }

    // Lazy greedy: repeatedly add the chain with the best marginal coverage,
    // re-evaluating stale heap entries only when they surface.
    std::vector<std::uint64_t> covered(blocks, 0);
    using Entry = std::pair<double, size_t>;
    std::priority_queue<Entry> heap;
    for (size_t c = 0; c < chains.size(); ++c) heap.push({mass_of(masks[c]), c});
    OptimumResult result;
    result.method = OptMode::Greedy;
    result.approximate = true;
    double value = 0.0;
    for (int e = 0; e < k; ++e) {
        size_t chosen = 0;
        double gain = 0.0;
        while (!heap.empty()) {
            auto [stale, c] = heap.top();
            heap.pop();
            std::vector<std::uint64_t> merged = covered;
            for (size_t b = 0; b < blocks; ++b) merged[b] |= masks[c][b];
            const double fresh = mass_of(merged) - value;
            if (heap.empty() || fresh >= heap.top().first - 1e-15) {
                chosen = c;
                gain = fresh;
                break;
            }
            heap.push({fresh, c});
        }
        for (size_t b = 0; b < blocks; ++b) covered[b] |= masks[chosen][b];
        value += gain;
        result.profile.push_back(PrefixChainStrategy::deterministic(chains[chosen], config));
    }
    result.welfare = value;
    return result;
}

PoaReport poa_report_welfares(const std::vector<double>& equilibrium_welfares,
                              const OptimumResult& opt) {
    PoaReport report;
    report.opt_welfare = opt.welfare;
    report.equilibrium_welfares = equilibrium_welfares;
    if (equilibrium_welfares.empty()) {
        report.status = "no-equilibrium";
        return report;
    }
    report.status = "ok";
    const auto [lo, hi] =
        std::minmax_element(equilibrium_welfares.begin(), equilibrium_welfares.end());
    report.poa = *lo > 0.0 ? opt.welfare / *lo : std::numeric_limits<double>::infinity();
    report.pos = *hi > 0.0 ? opt.welfare / *hi : std::numeric_limits<double>::infinity();
    return report;
}

PoaReport poa_report(const Instance& instance, const std::vector<SingletonProfile>& equilibria,
                     const OptimumResult& opt) {
    std::vector<double> welfares;
    welfares.reserve(equilibria.size());
    for (const auto& profile : equilibria)
        welfares.push_back(welfare(profile, instance.rule, instance.config, instance.dist));
    return poa_report_welfares(welfares, opt);
}

double price_of_anarchy(const Instance& instance, const std::vector<SingletonProfile>& equilibria,
                        const OptimumResult& opt) {
    const PoaReport report = poa_report(instance, equilibria, opt);
    if (!report.poa)
        throw ValidationError("price of anarchy is undefined without equilibria");
    return *report.poa;
}

double price_of_stability(const Instance& instance,
                          const std::vector<SingletonProfile>& equilibria,
                          const OptimumResult& opt) {
    const PoaReport report = poa_report(instance, equilibria, opt);
    if (!report.pos)
        throw ValidationError("price of stability is undefined without equilibria");
    return *report.pos;
}

double assignment_welfare(const std::vector<SlotAssignment>& profile, const SelectionRule& rule,
                          const GameConfig& config, const TypeDistribution& dist) {
    const int k = config.num_engines;
    if (static_cast<int>(profile.size()) != k)
        throw ValidationError("profile size does not match the engine count");
    double w = 0.0;
    for (const auto& entry : dist.entries()) {
        SatisfactionProfile q(static_cast<size_t>(k), 0.0);
        for (int i = 0; i < k; ++i)
            for (const auto& [slot, page] : profile[static_cast<size_t>(i)])
                if (slot <= entry.type.threshold && entry.type.desires(page)) {
                    q[static_cast<size_t>(i)] = 1.0;
                    break;
                }
        const std::vector<double> f = rule.evaluate(q);
        double chosen = 0.0;
        for (int i = 0; i < k; ++i) chosen += f[static_cast<size_t>(i)] * q[static_cast<size_t>(i)];
        w += entry.prob * chosen;
    }
    return w;
}

PropertyReport check_welfare_structure(const TypeDistribution& dist, const GameConfig& config,
                                       const SelectionRule& rule, int samples,
                                       std::uint64_t seed) {
    if (config.num_engines > 3 || config.num_pages > 4 || config.max_threshold > 2)
        throw ValidationError("welfare structure checks run on small instances only "
                              "(k <= 3, pages <= 4, thresholds <= 2)");
    PropertyReport report;
    report.property = "welfare-structure";
    report.passed = true;
    report.margin = std::numeric_limits<double>::infinity();

    Rng rng(seed);
    const int k = config.num_engines;
    const int n = config.num_pages;
    const int t = config.max_threshold;

    for (int s = 0; s < samples; ++s) {
        // A random superset profile and a nested sub-profile.
        std::vector<SlotAssignment> big(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            std::vector<bool> used(static_cast<size_t>(n), false);
            for (int slot = 1; slot <= t; ++slot) {
                if (rng.uniform() < 0.4) continue;
                int page = rng.below(n);
                int tries = 0;
                while (used[static_cast<size_t>(page)] && tries++ < n) page = (page + 1) % n;
                if (used[static_cast<size_t>(page)]) continue;
                used[static_cast<size_t>(page)] = true;
                big[static_cast<size_t>(i)].push_back({slot, page});
            }
        }
        std::vector<SlotAssignment> small(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
            for (const auto& pair : big[static_cast<size_t>(i)])
                if (rng.uniform() < 0.6) small[static_cast<size_t>(i)].push_back(pair);

        // A pair addable to the big profile is addable to the nested one too.
        const int engine = rng.below(k);
        std::vector<bool> slot_used(static_cast<size_t>(t + 1), false);
        std::vector<bool> page_used(static_cast<size_t>(n), false);
        for (const auto& [slot, page] : big[static_cast<size_t>(engine)]) {
            slot_used[static_cast<size_t>(slot)] = true;
            page_used[static_cast<size_t>(page)] = true;
        }
        std::vector<std::pair<int, int>> addable;
        for (int slot = 1; slot <= t; ++slot)
            for (int page = 0; page < n; ++page)
                if (!slot_used[static_cast<size_t>(slot)] && !page_used[static_cast<size_t>(page)])
                    addable.push_back({slot, page});
        if (addable.empty()) continue;
        const auto pair = addable[static_cast<size_t>(rng.below(static_cast<int>(addable.size())))];

        auto with_pair = [&](const std::vector<SlotAssignment>& profile) {
            std::vector<SlotAssignment> out = profile;
            out[static_cast<size_t>(engine)].push_back(pair);
            return out;
        };

        const double w_small = assignment_welfare(small, rule, config, dist);
        const double w_small_plus = assignment_welfare(with_pair(small), rule, config, dist);
        const double w_big = assignment_welfare(big, rule, config, dist);
        const double w_big_plus = assignment_welfare(with_pair(big), rule, config, dist);
        ++report.points_checked;

        const double monotone_slack = std::min(w_small_plus - w_small, w_big_plus - w_big);
        const double submodular_slack = (w_small_plus - w_small) - (w_big_plus - w_big);
        report.margin = std::min({report.margin, monotone_slack, submodular_slack});
        if (monotone_slack < -1e-10) {
            report.passed = false;
            report.witness = PropertyWitness{{}, engine, pair.second, monotone_slack, 0.0,
                                             "adding a (slot, page) pair decreased welfare"};
            return report;
        }
        if (submodular_slack < -1e-10) {
            report.passed = false;
            report.witness =
                PropertyWitness{{}, engine, pair.second, w_small_plus - w_small,
                                w_big_plus - w_big,
                                "marginal welfare grew on the larger profile (submodularity)"};
            return report;
        }
    }
    report.note = "welfare monotone and submodular on sampled nested profiles";
    return report;
}

} // namespace searchgame
