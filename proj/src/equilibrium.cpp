#include "searchgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "searchgame/game.hpp"

namespace searchgame {

namespace {

void require_singleton(const TypeDistribution& dist, const char* what) {
    if (!dist.is_singleton())
        throw ValidationError(std::string(what) +
                              " applies to singleton instances only (all desired sets single "
                              "pages, all thresholds 1)");
}

std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, tau = 0.0;
    for (size_t j = 0; j < u.size(); ++j) {
        cum += u[j];
        const double t = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) tau = t;
    }
    for (double& x : v) x = std::max(0.0, x - tau);
    return v;
}

/// One engine's payoff as a function of its own page vector with all
/// opponents frozen. The payoff is a sum of independent per-page terms
/// gamma_n f_i(q_n | own) (beta + (1-beta) own), which makes single-page
/// edits O(1) rule evaluations; every search below leans on that.
class OwnPayoff {
public:
    OwnPayoff(const SelectionRule& rule, const std::vector<double>& gamma, double beta,
              const SingletonProfile& opponents, int engine_index)
        : rule_(rule), gamma_(gamma), beta_(beta), engine_(engine_index) {
        const int k = rule.engine_count();
        if (static_cast<int>(opponents.size()) != k - 1)
            throw ValidationError("expected " + std::to_string(k - 1) + " opponent strategies");
        if (engine_index < 0 || engine_index >= k)
            throw ValidationError("engine index out of range");
        const int n = static_cast<int>(gamma.size());
        q_by_page_.assign(static_cast<size_t>(n),
                          SatisfactionProfile(static_cast<size_t>(k), 0.0));
        for (int page = 0; page < n; ++page) {
            int slot = 0;
            for (int j = 0; j < k; ++j) {
                if (j == engine_index) continue;
                q_by_page_[static_cast<size_t>(page)][static_cast<size_t>(j)] =
                    opponents[static_cast<size_t>(slot)][page];
                ++slot;
            }
        }
    }

    int num_pages() const { return static_cast<int>(gamma_.size()); }

    double term(int page, double own) const {
        const double x = std::clamp(own, 0.0, 1.0);
        SatisfactionProfile q = q_by_page_[static_cast<size_t>(page)];
        q[static_cast<size_t>(engine_)] = x;
        const std::vector<double> f = rule_.evaluate(q);
        return gamma_[static_cast<size_t>(page)] * f[static_cast<size_t>(engine_)] *
               (beta_ + (1.0 - beta_) * x);
    }

    double operator()(const std::vector<double>& x) const {
        double u = 0.0;
        for (int page = 0; page < num_pages(); ++page)
            u += term(page, x[static_cast<size_t>(page)]);
        return u;
    }

private:
    const SelectionRule& rule_;
    std::vector<double> gamma_;
    double beta_;
    int engine_;
    std::vector<SatisfactionProfile> q_by_page_;
};

struct SearchPoint {
    std::vector<double> x;
    double value = -std::numeric_limits<double>::infinity();
};

/// Best feasible single transfer of `delta` mass for each amount in the grid.
/// For a fixed amount the gain splits into a per-source loss and a per-target
/// gain, so the optimum needs only the top two of each.
bool apply_best_transfer(const OwnPayoff& payoff, SearchPoint& point,
                         const std::vector<double>& amounts) {
    const int n = payoff.num_pages();
    std::vector<double> base(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) base[static_cast<size_t>(p)] = payoff.term(p, point.x[static_cast<size_t>(p)]);

    double best_gain = 0.0;
    int best_a = -1, best_b = -1;
    double best_amount = 0.0;
    for (double raw : amounts) {
        // Source candidates: top two removal gains among pages holding the
        // full amount; targets: top two addition gains; combine avoiding
        // a == b.
        int a1 = -1, a2 = -1;
        double d1 = -std::numeric_limits<double>::infinity(), d2 = d1;
        int b1 = -1, b2 = -1;
        double u1 = -std::numeric_limits<double>::infinity(), u2 = u1;
        for (int p = 0; p < n; ++p) {
            const double have = point.x[static_cast<size_t>(p)];
            if (have >= raw) {
                const double down = payoff.term(p, have - raw) - base[static_cast<size_t>(p)];
                if (down > d1) {
                    d2 = d1; a2 = a1;
                    d1 = down; a1 = p;
                } else if (down > d2) {
                    d2 = down; a2 = p;
                }
            }
            if (have + raw <= 1.0 + 1e-12) {
                const double up = payoff.term(p, have + raw) - base[static_cast<size_t>(p)];
                if (up > u1) {
                    u2 = u1; b2 = b1;
                    u1 = up; b1 = p;
                } else if (up > u2) {
                    u2 = up; b2 = p;
                }
            }
        }
        auto consider = [&](int a, double down, int b, double up) {
            if (a < 0 || b < 0 || a == b) return;
            const double gain = down + up;
            if (gain > best_gain + 1e-15) {
                best_gain = gain;
                best_a = a;
                best_b = b;
                best_amount = raw;
            }
        };
        consider(a1, d1, b1, u1);
        consider(a1, d1, b2, u2);
        consider(a2, d2, b1, u1);
    }
    if (best_a < 0 || best_gain <= 1e-14) return false;
    point.x[static_cast<size_t>(best_a)] -= best_amount;
    point.x[static_cast<size_t>(best_b)] =
        std::min(1.0, point.x[static_cast<size_t>(best_b)] + best_amount);
    point.value += best_gain;
    // Guard against accumulated increment drift.
    point.value = payoff(point.x);
    return true;
}

const std::vector<double>& transfer_amounts() {
    static const std::vector<double> amounts = {1.0,       0.5,        0.25,      1.0 / 16,
                                                1.0 / 64,  1.0 / 256,  1e-2,      1e-3,
                                                1e-4};
    return amounts;
}

SearchPoint ascend(const OwnPayoff& payoff, std::vector<double> start) {
    const int n = payoff.num_pages();
    const double h = 1e-6;
    SearchPoint point{std::move(start), 0.0};
    point.value = payoff(point.x);

    double step = 0.25;
    for (int iter = 0; iter < 120; ++iter) {
        // Central differences; each coordinate touches one term only.
        std::vector<double> grad(static_cast<size_t>(n), 0.0);
        for (int p = 0; p < n; ++p) {
            const double xi = point.x[static_cast<size_t>(p)];
            const double hi = std::min(1.0, xi + h);
            const double lo = std::max(0.0, xi - h);
            if (hi > lo)
                grad[static_cast<size_t>(p)] =
                    (payoff.term(p, hi) - payoff.term(p, lo)) / (hi - lo);
        }
        bool improved = false;
        double trial = step;
        while (trial > 1e-7) {
            std::vector<double> y(static_cast<size_t>(n));
            for (int p = 0; p < n; ++p)
                y[static_cast<size_t>(p)] =
                    point.x[static_cast<size_t>(p)] + trial * grad[static_cast<size_t>(p)];
            y = project_simplex(std::move(y));
            const double fy = payoff(y);
            if (fy > point.value + 1e-14) {
                point.x = std::move(y);
                point.value = fy;
                step = std::min(0.5, trial * 1.3);
                improved = true;
                break;
            }
            trial *= 0.5;
        }
        if (!improved) break;
    }
    // Pairwise transfer polish; this is the line-search path that copes with
    // the rules' discontinuities.
    for (int round = 0; round < 60; ++round)
        if (!apply_best_transfer(payoff, point, transfer_amounts())) break;
    return point;
}

/// Payoffs of every deterministic page strategy in one sweep.
std::vector<double> vertex_payoffs(const OwnPayoff& payoff) {
    const int n = payoff.num_pages();
    double at_zero = 0.0;
    std::vector<double> zero_terms(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
        zero_terms[static_cast<size_t>(p)] = payoff.term(p, 0.0);
        at_zero += zero_terms[static_cast<size_t>(p)];
    }
    std::vector<double> out(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p)
        out[static_cast<size_t>(p)] =
            at_zero - zero_terms[static_cast<size_t>(p)] + payoff.term(p, 1.0);
    return out;
}

std::vector<std::vector<double>> ascent_starts(const OwnPayoff& payoff,
                                               const std::vector<double>& gamma, Rng& rng) {
    const int n = payoff.num_pages();
    std::vector<std::vector<double>> starts;
    auto vertex = [&](int v) {
        std::vector<double> x(static_cast<size_t>(n), 0.0);
        x[static_cast<size_t>(v)] = 1.0;
        return x;
    };
    if (n <= 8) {
        for (int v = 0; v < n; ++v) starts.push_back(vertex(v));
    } else {
        // Beyond desk scale the climb starts from the few best vertices; all
        // vertices still enter the candidate pool exactly.
        const std::vector<double> vp = vertex_payoffs(payoff);
        std::vector<int> order(static_cast<size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + 6, order.end(), [&](int a, int b) {
            return vp[static_cast<size_t>(a)] > vp[static_cast<size_t>(b)];
        });
        for (int i = 0; i < 6; ++i) starts.push_back(vertex(order[static_cast<size_t>(i)]));
        starts.push_back(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
    }
    starts.push_back(gamma);
    for (int r = 0; r < 2; ++r) {
        std::vector<double> x(static_cast<size_t>(n));
        double total = 0.0;
        for (double& xi : x) {
            xi = -std::log(1.0 - rng.uniform());
            total += xi;
        }
        for (double& xi : x) xi /= total;
        starts.push_back(std::move(x));
    }
    return starts;
}

SearchPoint maximize(const OwnPayoff& payoff, const std::vector<double>& gamma, Rng& rng) {
    SearchPoint best;
    for (const auto& start : ascent_starts(payoff, gamma, rng)) {
        SearchPoint point = ascend(payoff, start);
        if (point.value > best.value) best = std::move(point);
    }
    const std::vector<double> vp = vertex_payoffs(payoff);
    for (int p = 0; p < payoff.num_pages(); ++p) {
        if (vp[static_cast<size_t>(p)] > best.value) {
            best.value = vp[static_cast<size_t>(p)];
            best.x.assign(static_cast<size_t>(payoff.num_pages()), 0.0);
            best.x[static_cast<size_t>(p)] = 1.0;
        }
    }
    return best;
}

SingletonProfile drop_engine(const SingletonProfile& profile, int engine) {
    SingletonProfile rest;
    rest.reserve(profile.size() - 1);
    for (size_t j = 0; j < profile.size(); ++j)
        if (static_cast<int>(j) != engine) rest.push_back(profile[j]);
    return rest;
}

/// Strongest shift deviation from `current`: for each amount, the best
/// source/target pair by the same decomposition the polish uses.
double best_shift_payoff(const OwnPayoff& payoff, const std::vector<double>& current,
                         std::vector<double>* arg) {
    SearchPoint point{current, payoff(current)};
    SearchPoint best = point;
    static const std::vector<double> shift_amounts = {1e-2, 1e-3, 1e-4};
    for (double eps : shift_amounts) {
        SearchPoint trial = point;
        if (apply_best_transfer(payoff, trial, {eps}) && trial.value > best.value)
            best = std::move(trial);
    }
    if (arg) *arg = best.x;
    return best.value;
}

} // namespace

BestResponse best_response_singleton(const SelectionRule& rule, const TypeDistribution& dist,
                                     double beta, const SingletonProfile& opponents,
                                     int engine_index, std::uint64_t seed) {
    require_singleton(dist, "best_response_singleton");
    const std::vector<double> gamma = dist.page_probs();
    OwnPayoff payoff(rule, gamma, beta, opponents, engine_index);
    Rng rng(seed);
    SearchPoint best = maximize(payoff, gamma, rng);
    SingletonStrategy strategy(std::move(best.x), /*normalize=*/true);
    const double value = payoff(strategy.probs());
    return {std::move(strategy), value};
}

ChainBestResponse best_response_deterministic(const SelectionRule& rule,
                                              const TypeDistribution& dist, double beta,
                                              const GameConfig& config,
                                              const ChainProfile& opponents, int engine_index) {
    const int k = config.num_engines;
    if (static_cast<int>(opponents.size()) != k - 1)
        throw ValidationError("expected " + std::to_string(k - 1) + " opponent strategies");
    const int n = config.num_pages;
    const int t = config.max_threshold;
    double count = 1.0;
    for (int i = 0; i < t; ++i) count *= static_cast<double>(n - i);
    if (count > 1e6)
        throw ValidationError("chain enumeration would visit " + format_real(count) +
                              " chains; the cap is 1e6");

    // Opponent satisfaction per type is fixed; only the candidate's indicator
    // varies.
    std::vector<SatisfactionProfile> q_by_type;
    q_by_type.reserve(dist.entries().size());
    for (const auto& entry : dist.entries()) {
        SatisfactionProfile q(static_cast<size_t>(k), 0.0);
        int slot = 0;
        for (int j = 0; j < k; ++j) {
            if (j == engine_index) continue;
            q[static_cast<size_t>(j)] = satisfaction_probability(
                opponents[static_cast<size_t>(slot)], entry.type, config);
            ++slot;
        }
        q_by_type.push_back(std::move(q));
    }

    auto candidate_payoff = [&](const std::vector<int>& slots) {
        double u = 0.0;
        SatisfactionProfile q;
        const auto& entries = dist.entries();
        for (size_t ti = 0; ti < entries.size(); ++ti) {
            const UserType& type = entries[ti].type;
            double own = 0.0;
            for (int s = 0; s < type.threshold; ++s) {
                if (type.desires(slots[static_cast<size_t>(s)])) {
                    own = 1.0;
                    break;
                }
            }
            q = q_by_type[ti];
            q[static_cast<size_t>(engine_index)] = own;
            const std::vector<double> f = rule.evaluate(q);
            u += entries[ti].prob * f[static_cast<size_t>(engine_index)] *
                 (beta + (1.0 - beta) * own);
        }
        return u;
    };

    ChainBestResponse best;
    best.payoff = -std::numeric_limits<double>::infinity();
    std::vector<int> slots;
    std::vector<bool> used(static_cast<size_t>(n), false);
    // Lexicographic depth-first enumeration; strict improvement keeps the
    // first (lowest) chain on ties.
    auto dfs = [&](auto&& self, int depth) -> void {
        if (depth == t) {
            const double u = candidate_payoff(slots);
            if (u > best.payoff) {
                best.payoff = u;
                best.slots = slots;
            }
            return;
        }
        for (int page = 0; page < n; ++page) {
            if (used[static_cast<size_t>(page)]) continue;
            used[static_cast<size_t>(page)] = true;
            slots.push_back(page);
            self(self, depth + 1);
            slots.pop_back();
            used[static_cast<size_t>(page)] = false;
        }
    };
    dfs(dfs, 0);
    return best;
}

namespace {

struct DeviationSearch {
    double best_payoff = -std::numeric_limits<double>::infinity();
    std::optional<SingletonStrategy> best_strategy;
};

/// Strongest deviation for one engine of a singleton profile: exact page
/// vertices, the continuous maximizer, and the best small pairwise shift.
DeviationSearch strongest_deviation(const SingletonProfile& profile, const Instance& instance,
                                    int engine, std::uint64_t seed) {
    const std::vector<double> gamma = instance.dist.page_probs();
    const int n = instance.config.num_pages;
    OwnPayoff payoff(instance.rule, gamma, instance.config.beta, drop_engine(profile, engine),
                     engine);

    DeviationSearch out;
    auto consider = [&](std::vector<double> x, double value) {
        if (value > out.best_payoff) {
            out.best_payoff = value;
            out.best_strategy = SingletonStrategy(std::move(x), /*normalize=*/true);
        }
    };

    const std::vector<double> vp = vertex_payoffs(payoff);
    for (int v = 0; v < n; ++v) {
        std::vector<double> x(static_cast<size_t>(n), 0.0);
        x[static_cast<size_t>(v)] = 1.0;
        consider(std::move(x), vp[static_cast<size_t>(v)]);
    }

    Rng rng(seed);
    SearchPoint climbed = maximize(payoff, gamma, rng);
    consider(std::move(climbed.x), climbed.value);

    std::vector<double> shifted;
    const double shift_value =
        best_shift_payoff(payoff, profile[static_cast<size_t>(engine)].probs(), &shifted);
    consider(std::move(shifted), shift_value);
    return out;
}

} // namespace

EquilibriumReport verify_epsilon_nash(const SingletonProfile& profile, const Instance& instance,
                                      double epsilon, std::uint64_t seed) {
    instance.validate();
    require_singleton(instance.dist, "verify_epsilon_nash(singleton)");
    const int k = instance.config.num_engines;
    if (static_cast<int>(profile.size()) != k)
        throw ValidationError("profile size does not match the engine count");

    EquilibriumReport report;
    report.epsilon = epsilon;
    report.payoffs = engine_payoffs(profile, instance.rule, instance.config, instance.dist);
    report.welfare_value = welfare(profile, instance.rule, instance.config, instance.dist);
    report.regrets.resize(static_cast<size_t>(k), 0.0);
    report.witnesses.resize(static_cast<size_t>(k));

    for (int i = 0; i < k; ++i) {
        const DeviationSearch found = strongest_deviation(profile, instance, i, seed);
        const double regret =
            std::max(0.0, found.best_payoff - report.payoffs[static_cast<size_t>(i)]);
        report.regrets[static_cast<size_t>(i)] = regret;
        if (regret > epsilon && found.best_strategy) {
            Deviation dev;
            dev.engine = i;
            dev.strategy = *found.best_strategy;
            dev.payoff = found.best_payoff;
            dev.gain = regret;
            report.witnesses[static_cast<size_t>(i)] = std::move(dev);
        }
    }
    report.is_equilibrium =
        *std::max_element(report.regrets.begin(), report.regrets.end()) <= epsilon;
    return report;
}

EquilibriumReport verify_epsilon_nash(const ChainProfile& profile, const Instance& instance,
                                      double epsilon) {
    instance.validate();
    const int k = instance.config.num_engines;
    if (static_cast<int>(profile.size()) != k)
        throw ValidationError("profile size does not match the engine count");

    EquilibriumReport report;
    report.epsilon = epsilon;
    report.payoffs = engine_payoffs(profile, instance.rule, instance.config, instance.dist);
    report.welfare_value = welfare(profile, instance.rule, instance.config, instance.dist);
    report.regrets.resize(static_cast<size_t>(k), 0.0);
    report.witnesses.resize(static_cast<size_t>(k));

    for (int i = 0; i < k; ++i) {
        ChainProfile rest;
        for (int j = 0; j < k; ++j)
            if (j != i) rest.push_back(profile[static_cast<size_t>(j)]);
        const ChainBestResponse best = best_response_deterministic(
            instance.rule, instance.dist, instance.config.beta, instance.config, rest, i);
        const double regret =
            std::max(0.0, best.payoff - report.payoffs[static_cast<size_t>(i)]);
        report.regrets[static_cast<size_t>(i)] = regret;
        if (regret > epsilon) {
            Deviation dev;
            dev.engine = i;
            dev.chain = best.slots;
            dev.payoff = best.payoff;
            dev.gain = regret;
            report.witnesses[static_cast<size_t>(i)] = std::move(dev);
        }
    }
    report.is_equilibrium =
        *std::max_element(report.regrets.begin(), report.regrets.end()) <= epsilon;
    return report;
}

SingletonStrategy symmetric_equilibrium_beta1_proportional(const TypeDistribution& dist) {
    require_singleton(dist, "symmetric_equilibrium_beta1_proportional");
    return SingletonStrategy(dist.page_probs());
}

std::pair<SymmetricSolverState, HessianCertificate>
symmetric_equilibrium_proportional(const TypeDistribution& dist, double beta, int engines) {
    require_singleton(dist, "symmetric_equilibrium_proportional");
    if (!(beta > 0.0))
        throw ValidationError("the symmetric solver applies to beta in (0,1]; the beta=0 regime "
                              "has deterministic equilibria instead");
    if (beta > 1.0) throw ValidationError("beta cannot exceed 1");
    if (engines < 2) throw ValidationError("at least two engines are required");

    const std::vector<double> gamma = dist.page_probs();
    const double z = (2.0 * engines - 1.0) * (1.0 - beta) / ((engines - 1.0) * beta);
    const double gmax = *std::max_element(gamma.begin(), gamma.end());

    const auto mass = [&](double lambda) {
        double s = 0.0;
        for (double g : gamma) s += g / (lambda - z * g);
        return s;
    };

    // The map is strictly decreasing on (z*gmax, inf), blowing up at the left
    // end and vanishing at infinity; [z*gmax, z*gmax + 1] brackets the root
    // because sum_n g_n / (z*gmax + 1 - z*g_n) <= sum_n g_n = 1.
    double lo = z * gmax;
    double hi = z * gmax + 1.0;
    if (mass(hi) > 1.0 + 1e-9)
        throw SolverError("bracketing failed: mass(" + format_real(hi) + ") = " +
                          format_real(mass(hi)) + " > 1");
    double lambda = hi;
    for (int iter = 0; iter < 500; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double m = mass(mid);
        if (std::abs(m - 1.0) <= 1e-14) {
            lambda = mid;
            break;
        }
        if (m > 1.0) lo = mid;
        else hi = mid;
        lambda = hi;
    }
    const double residual = std::abs(mass(lambda) - 1.0);
    if (residual > 1e-12)
        throw SolverError("bisection stalled at lambda = " + format_real(lambda) +
                          " with residual " + format_real(residual));

    std::vector<double> probs(gamma.size());
    for (size_t i = 0; i < gamma.size(); ++i) probs[i] = gamma[i] / (lambda - z * gamma[i]);

    SymmetricSolverState state{z, lambda, SingletonStrategy(probs)};

    HessianCertificate cert;
    cert.beta_threshold = 1.0 - 1.0 / engines;
    cert.globally_concave = beta > cert.beta_threshold;
    cert.diagonal.resize(gamma.size());
    bool all_negative = true;
    for (size_t i = 0; i < gamma.size(); ++i) {
        const double others = (engines - 1.0) * probs[i];
        const double denom = probs[i] + others;
        cert.diagonal[i] =
            -2.0 * gamma[i] * others * (beta - (1.0 - beta) * others) / (denom * denom * denom);
        if (!(cert.diagonal[i] < 0.0)) all_negative = false;
    }
    cert.negative_at_symmetric_point = all_negative;
    return {std::move(state), std::move(cert)};
}

namespace {

std::vector<std::vector<double>> simplex_grid(int pages, int m) {
    std::vector<std::vector<double>> points;
    std::vector<int> parts(static_cast<size_t>(pages), 0);
    auto rec = [&](auto&& self, int index, int remaining) -> void {
        if (index == pages - 1) {
            parts[static_cast<size_t>(index)] = remaining;
            std::vector<double> x(static_cast<size_t>(pages));
            for (int i = 0; i < pages; ++i)
                x[static_cast<size_t>(i)] =
                    static_cast<double>(parts[static_cast<size_t>(i)]) / static_cast<double>(m);
            points.push_back(std::move(x));
            return;
        }
        for (int take = 0; take <= remaining; ++take) {
            parts[static_cast<size_t>(index)] = take;
            self(self, index + 1, remaining - take);
        }
    };
    rec(rec, 0, m);
    return points;
}

} // namespace

std::vector<std::pair<SingletonProfile, EquilibriumReport>>
brute_force_equilibria(const Instance& instance, int grid_m, double epsilon, std::uint64_t seed) {
    instance.validate();
    require_singleton(instance.dist, "brute_force_equilibria");
    const int k = instance.config.num_engines;
    const int n = instance.config.num_pages;
    if (k > 3) throw ValidationError("brute force is limited to at most 3 engines");
    if (n > 4) throw ValidationError("brute force is limited to at most 4 pages");
    if (grid_m < 1 || grid_m > 20) throw ValidationError("grid denominator must lie in [1, 20]");

    const auto grid = simplex_grid(n, grid_m);
    const double total = std::pow(static_cast<double>(grid.size()), k);
    if (total > 1e7)
        throw ValidationError("grid enumeration would visit " + format_real(total) +
                              " profiles; the cap is 1e7");

    const std::vector<double> gamma = instance.dist.page_probs();
    std::vector<std::pair<SingletonProfile, EquilibriumReport>> found;

    std::vector<size_t> idx(static_cast<size_t>(k), 0);
    while (true) {
        SingletonProfile profile;
        profile.reserve(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
            profile.emplace_back(grid[idx[static_cast<size_t>(i)]], /*normalize=*/false);

        const std::vector<double> payoffs =
            engine_payoffs(profile, instance.rule, instance.config, instance.dist);
        bool grid_equilibrium = true;
        for (int i = 0; i < k && grid_equilibrium; ++i) {
            OwnPayoff payoff(instance.rule, gamma, instance.config.beta, drop_engine(profile, i),
                             i);
            for (const auto& g : grid) {
                if (payoff(g) > payoffs[static_cast<size_t>(i)] + epsilon) {
                    grid_equilibrium = false;
                    break;
                }
            }
        }
        if (grid_equilibrium)
            found.emplace_back(profile, verify_epsilon_nash(profile, instance, epsilon, seed));

        int pos = 0;
        while (pos < k && ++idx[static_cast<size_t>(pos)] == grid.size())
            idx[static_cast<size_t>(pos++)] = 0;
        if (pos == k) break;
    }
    return found;
}

std::optional<Deviation> find_improving_deviation(const SingletonProfile& profile,
                                                  const Instance& instance, double min_gain) {
    instance.validate();
    require_singleton(instance.dist, "find_improving_deviation");
    const int k = instance.config.num_engines;
    const int n = instance.config.num_pages;
    const std::vector<double> gamma = instance.dist.page_probs();
    const std::vector<double> payoffs =
        engine_payoffs(profile, instance.rule, instance.config, instance.dist);

    auto pack = [&](int engine, std::vector<double> x, double value) -> Deviation {
        Deviation dev;
        dev.engine = engine;
        dev.strategy = SingletonStrategy(std::move(x), /*normalize=*/true);
        dev.payoff = value;
        dev.gain = value - payoffs[static_cast<size_t>(engine)];
        return dev;
    };

    // Vertex deviations first, then the shift construction.
    for (int i = 0; i < k; ++i) {
        OwnPayoff payoff(instance.rule, gamma, instance.config.beta, drop_engine(profile, i), i);
        const std::vector<double> vp = vertex_payoffs(payoff);
        for (int v = 0; v < n; ++v) {
            if (vp[static_cast<size_t>(v)] - payoffs[static_cast<size_t>(i)] > min_gain) {
                std::vector<double> x(static_cast<size_t>(n), 0.0);
                x[static_cast<size_t>(v)] = 1.0;
                return pack(i, std::move(x), vp[static_cast<size_t>(v)]);
            }
        }
    }
    for (int i = 0; i < k; ++i) {
        OwnPayoff payoff(instance.rule, gamma, instance.config.beta, drop_engine(profile, i), i);
        std::vector<double> shifted;
        const double value =
            best_shift_payoff(payoff, profile[static_cast<size_t>(i)].probs(), &shifted);
        if (value - payoffs[static_cast<size_t>(i)] > min_gain)
            return pack(i, std::move(shifted), value);
    }
    return std::nullopt;
}

} // namespace searchgame
