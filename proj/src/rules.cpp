#include "searchgame/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace searchgame {

namespace {

SatisfactionProfile checked_profile(const SatisfactionProfile& q, int engines) {
    if (static_cast<int>(q.size()) != engines)
        throw ValidationError("satisfaction profile has " + std::to_string(q.size()) +
                              " entries for " + std::to_string(engines) + " engines");
    SatisfactionProfile out = q;
    for (double& x : out) {
        if (std::isnan(x) || x < -kProbTolerance || x > 1.0 + kProbTolerance)
            throw ValidationError("satisfaction probabilities must lie in [0,1]");
        x = std::clamp(x, 0.0, 1.0);
    }
    return out;
}

} // namespace

SelectionRule SelectionRule::proportional(int engines) {
    if (engines < 2) throw ValidationError("a rule needs at least two engines");
    return SelectionRule(RuleKind::Proportional, engines);
}

SelectionRule SelectionRule::markovian_basic(int engines) {
    if (engines < 2) throw ValidationError("a rule needs at least two engines");
    return SelectionRule(RuleKind::MarkovianBasic, engines);
}

SelectionRule SelectionRule::majority(int engines) {
    if (engines < 2) throw ValidationError("a rule needs at least two engines");
    return SelectionRule(RuleKind::Majority, engines);
}

SelectionRule SelectionRule::weighted_proportional(std::vector<double> weights) {
    if (weights.size() < 2) throw ValidationError("a rule needs at least two engines");
    for (double w : weights)
        if (!(w > 0.0)) throw ValidationError("weights must be positive");
    SelectionRule rule(RuleKind::WeightedProportional, static_cast<int>(weights.size()));
    rule.weights_ = std::move(weights);
    return rule;
}

SelectionRule SelectionRule::gamma_power() {
    return SelectionRule(RuleKind::GammaPower, 3);
}

SelectionRule SelectionRule::truncated_indifferent(int pages) {
    if (pages < 2) throw ValidationError("the truncated rule needs at least two pages");
    SelectionRule rule(RuleKind::TruncatedIndifferent, pages + 1);
    rule.pages_ = pages;
    return rule;
}

SelectionRule SelectionRule::induced_markov(MarkovUserModel model) {
    SelectionRule rule(RuleKind::InducedMarkov, model.engine_count());
    rule.model_ = std::make_shared<const MarkovUserModel>(std::move(model));
    return rule;
}

bool SelectionRule::is_symmetric() const {
    switch (kind_) {
    case RuleKind::Proportional:
    case RuleKind::MarkovianBasic:
    case RuleKind::Majority:
        return true;
    default:
        return false;
    }
}

std::string SelectionRule::name() const {
    switch (kind_) {
    case RuleKind::Proportional: return "proportional";
    case RuleKind::MarkovianBasic: return "markovian";
    case RuleKind::Majority: return "majority";
    case RuleKind::WeightedProportional: return "weighted_proportional";
    case RuleKind::GammaPower: return "gamma_power";
    case RuleKind::TruncatedIndifferent: return "truncated_indifferent";
    case RuleKind::InducedMarkov: return "induced_markov";
    }
    return "unknown";
}

std::vector<double> SelectionRule::evaluate(const SatisfactionProfile& raw) const {
    const SatisfactionProfile q = checked_profile(raw, engines_);
    const size_t k = q.size();
    std::vector<double> f(k, 0.0);

    switch (kind_) {
    case RuleKind::Proportional: {
        const double total = std::accumulate(q.begin(), q.end(), 0.0);
        if (total <= 0.0) {
            std::fill(f.begin(), f.end(), 1.0 / static_cast<double>(k));
        } else {
            for (size_t i = 0; i < k; ++i) f[i] = q[i] / total;
        }
        break;
    }
    case RuleKind::MarkovianBasic: {
        // Engines that satisfy with certainty capture the user outright.
        const long certain = std::count(q.begin(), q.end(), 1.0);
        if (certain > 0) {
            for (size_t i = 0; i < k; ++i)
                f[i] = q[i] == 1.0 ? 1.0 / static_cast<double>(certain) : 0.0;
        } else {
            double total = 0.0;
            for (size_t i = 0; i < k; ++i) {
                f[i] = 1.0 / (1.0 - q[i]);
                total += f[i];
            }
            for (double& x : f) x /= total;
        }
        break;
    }
    case RuleKind::Majority: {
        const double best = *std::max_element(q.begin(), q.end());
        const long ties = std::count(q.begin(), q.end(), best);
        for (size_t i = 0; i < k; ++i)
            f[i] = q[i] == best ? 1.0 / static_cast<double>(ties) : 0.0;
        break;
    }
    case RuleKind::WeightedProportional: {
        double total = 0.0;
        for (size_t i = 0; i < k; ++i) total += weights_[i] * q[i];
        if (total <= 0.0) {
            // Limit along q = eps * 1: shares proportional to the weights.
            const double wsum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
            for (size_t i = 0; i < k; ++i) f[i] = weights_[i] / wsum;
        } else {
            for (size_t i = 0; i < k; ++i) f[i] = weights_[i] * q[i] / total;
        }
        break;
    }
    case RuleKind::GammaPower: {
        double gamma[3];
        for (int i = 0; i < 3; ++i)
            gamma[i] = q[static_cast<size_t>(i)] *
                       std::exp2(q[static_cast<size_t>((i + 1) % 3)] -
                                 q[static_cast<size_t>((i + 2) % 3)]);
        const double total = gamma[0] + gamma[1] + gamma[2];
        if (total <= 0.0) {
            std::fill(f.begin(), f.end(), 1.0 / 3.0);
        } else {
            for (int i = 0; i < 3; ++i) f[static_cast<size_t>(i)] = gamma[i] / total;
        }
        break;
    }
    case RuleKind::TruncatedIndifferent: {
        const int n = pages_;
        int sole = -1, positives = 0;
        for (int i = 0; i < n; ++i) {
            if (q[static_cast<size_t>(i)] > 0.0) {
                ++positives;
                sole = i;
            }
        }
        if (positives == 1) {
            f[static_cast<size_t>(sole)] = 1.0;
            break;
        }
        double head = 0.0;
        for (int i = 0; i < n; ++i) {
            double others = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) others += q[static_cast<size_t>(j)];
            f[static_cast<size_t>(i)] =
                std::max(0.0, std::min(1.0 / static_cast<double>(n), 0.5 * (1.0 - others)));
            head += f[static_cast<size_t>(i)];
        }
        f[static_cast<size_t>(n)] = std::max(0.0, 1.0 - head);
        break;
    }
    case RuleKind::InducedMarkov:
        f = stationary(*model_, q);
        break;
    }
    return f;
}

RuleFn rule_fn(const SelectionRule& rule) {
    return [rule](const SatisfactionProfile& q) { return rule.evaluate(q); };
}

// ---------------------------------------------------------------------------
// Property checks
// ---------------------------------------------------------------------------

namespace {

constexpr double kMonotoneSlack = 1e-10;
constexpr double kConvexTolerance = 1e-8;
constexpr double kStrictTolerance = 1e-10;
constexpr long kGridCap = 20000;

/// Sampled profiles: full grid when small enough (random grid points
/// otherwise) plus `extra` snapped-random points hitting 0 and 1 often.
std::vector<SatisfactionProfile> sample_profiles(int engines, double grid_step, int extra,
                                                 Rng& rng) {
    std::vector<SatisfactionProfile> points;
    const int steps = static_cast<int>(std::round(1.0 / grid_step));
    const long per_axis = steps + 1;
    double grid_count = 1.0;
    for (int i = 0; i < engines; ++i) grid_count *= static_cast<double>(per_axis);

    if (grid_count <= static_cast<double>(kGridCap)) {
        SatisfactionProfile q(static_cast<size_t>(engines), 0.0);
        std::vector<int> idx(static_cast<size_t>(engines), 0);
        while (true) {
            for (int i = 0; i < engines; ++i)
                q[static_cast<size_t>(i)] =
                    std::min(1.0, idx[static_cast<size_t>(i)] * grid_step);
            points.push_back(q);
            int pos = 0;
            while (pos < engines && ++idx[static_cast<size_t>(pos)] > steps)
                idx[static_cast<size_t>(pos++)] = 0;
            if (pos == engines) break;
        }
    } else {
        for (long s = 0; s < kGridCap; ++s) {
            SatisfactionProfile q(static_cast<size_t>(engines));
            for (double& x : q)
                x = std::min(1.0, rng.below(static_cast<int>(per_axis)) * grid_step);
            points.push_back(std::move(q));
        }
    }
    for (int s = 0; s < extra; ++s) {
        SatisfactionProfile q(static_cast<size_t>(engines));
        for (double& x : q) {
            const double r = rng.uniform();
            if (r < 0.15) x = 0.0;
            else if (r > 0.85) x = 1.0;
            else x = (r - 0.15) / 0.7;
        }
        points.push_back(std::move(q));
    }
    return points;
}

bool eval_or_skip(const RuleFn& f, const SatisfactionProfile& q, std::vector<double>& out,
                  long& skipped) {
    try {
        out = f(q);
        return true;
    } catch (const SolverError&) {
        // Outside the rule's domain (e.g. a reducible induced chain); the
        // sampled certification simply avoids the point.
        ++skipped;
        return false;
    }
}

void finish(PropertyReport& report, long skipped) {
    if (report.passed && report.note.empty())
        report.note = "no violation found on sampled points";
    if (skipped > 0)
        report.note += "; skipped " + std::to_string(skipped) + " points outside the rule's domain";
}

} // namespace

PropertyReport check_monotone(const RuleFn& f, int engines, double grid_step, int samples,
                              std::uint64_t seed) {
    if (!(grid_step > 0.0 && grid_step <= 0.5))
        throw ValidationError("grid_step must lie in (0, 0.5]");
    PropertyReport report;
    report.property = "monotone";
    report.passed = true;
    report.margin = std::numeric_limits<double>::infinity();
    long skipped = 0;

    Rng rng(seed);
    for (const auto& q : sample_profiles(engines, grid_step, samples, rng)) {
        std::vector<double> base;
        if (!eval_or_skip(f, q, base, skipped)) continue;
        for (int i = 0; i < engines; ++i) {
            if (q[static_cast<size_t>(i)] + grid_step > 1.0 + kProbTolerance) continue;
            SatisfactionProfile up = q;
            up[static_cast<size_t>(i)] = std::min(1.0, up[static_cast<size_t>(i)] + grid_step);
            std::vector<double> bumped;
            if (!eval_or_skip(f, up, bumped, skipped)) continue;
            ++report.points_checked;
            for (int j = 0; j < engines; ++j) {
                const double before = base[static_cast<size_t>(j)];
                const double after = bumped[static_cast<size_t>(j)];
                const double slack = j == i ? after - before : before - after;
                report.margin = std::min(report.margin, slack);
                if (slack < -kMonotoneSlack) {
                    report.passed = false;
                    report.witness = PropertyWitness{
                        q, j, i, before, after,
                        j == i ? "own share decreased when raising own satisfaction"
                               : "rival share increased when raising another engine's satisfaction"};
                    finish(report, skipped);
                    return report;
                }
            }
        }
    }
    finish(report, skipped);
    return report;
}

PropertyReport check_non_indifferent(const RuleFn& f, int engines, double grid_step,
                                     std::uint64_t seed) {
    if (!(grid_step > 0.0 && grid_step <= 0.5))
        throw ValidationError("grid_step must lie in (0, 0.5]");
    PropertyReport report;
    report.property = "non-indifferent";
    report.passed = true;
    report.margin = std::numeric_limits<double>::infinity();
    long skipped = 0;

    Rng rng(seed);
    for (const auto& q : sample_profiles(engines, grid_step, 200, rng)) {
        std::vector<double> base;
        if (!eval_or_skip(f, q, base, skipped)) continue;

        int support = 0;
        bool some_below_one = false;
        bool some_at_one = false;
        for (double x : q) {
            if (x > 0.0) {
                ++support;
                if (x < 1.0) some_below_one = true;
            }
            if (x == 1.0) some_at_one = true;
        }

        // Some engine guaranteed to satisfy: engines guaranteed to fail get
        // no users.
        if (some_at_one) {
            ++report.points_checked;
            for (int j = 0; j < engines; ++j) {
                if (q[static_cast<size_t>(j)] == 0.0 &&
                    base[static_cast<size_t>(j)] > kProbTolerance) {
                    report.passed = false;
                    report.witness =
                        PropertyWitness{q, j, -1, base[static_cast<size_t>(j)], 0.0,
                                        "an engine certain to fail still attracts users while "
                                        "another engine is certain to satisfy"};
                    finish(report, skipped);
                    return report;
                }
            }
        }

        if (support < 2 || !some_below_one) continue;
        ++report.points_checked;
        bool improvable = false;
        double best_gain = 0.0;
        for (int i = 0; i < engines && !improvable; ++i) {
            if (!(q[static_cast<size_t>(i)] > 0.0)) continue;
            SatisfactionProfile full = q;
            full[static_cast<size_t>(i)] = 1.0;
            std::vector<double> raised;
            if (!eval_or_skip(f, full, raised, skipped)) continue;
            const double gain =
                raised[static_cast<size_t>(i)] - base[static_cast<size_t>(i)];
            best_gain = std::max(best_gain, gain);
            if (gain > kMonotoneSlack) improvable = true;
        }
        if (!improvable) {
            report.passed = false;
            report.witness = PropertyWitness{
                q, -1, -1, best_gain, 0.0,
                "no supporting engine gains selection mass by raising satisfaction to 1"};
            finish(report, skipped);
            return report;
        }
        report.margin = std::min(report.margin, best_gain);
    }
    finish(report, skipped);
    return report;
}

PropertyReport check_convex(const RuleFn& f, int engines, double grid_step, std::uint64_t seed) {
    if (!(grid_step > 0.0 && grid_step <= 0.5))
        throw ValidationError("grid_step must lie in (0, 0.5]");
    PropertyReport report;
    report.property = "convex";
    report.passed = true;
    report.strict = true;
    report.margin = std::numeric_limits<double>::infinity();
    long skipped = 0;

    Rng rng(seed);
    const int steps = static_cast<int>(std::round(1.0 / grid_step));
    const int contexts = 50;
    for (int i = 0; i < engines; ++i) {
        for (int c = 0; c < contexts; ++c) {
            SatisfactionProfile q(static_cast<size_t>(engines), 0.0);
            for (int j = 0; j < engines; ++j) {
                if (j == i) continue;
                if (c == 0) q[static_cast<size_t>(j)] = 0.0;
                else if (c == 1) q[static_cast<size_t>(j)] = 0.5;
                else {
                    const double r = rng.uniform();
                    q[static_cast<size_t>(j)] = r < 0.15 ? 0.0 : (r > 0.85 ? 1.0 : (r - 0.15) / 0.7);
                }
            }
            for (int s = 1; s < steps; ++s) {
                const double x = s * grid_step;
                auto at = [&](double v) {
                    SatisfactionProfile p = q;
                    p[static_cast<size_t>(i)] = std::clamp(v, 0.0, 1.0);
                    return p;
                };
                std::vector<double> lo, mid, hi;
                if (!eval_or_skip(f, at(x - grid_step), lo, skipped) ||
                    !eval_or_skip(f, at(x), mid, skipped) ||
                    !eval_or_skip(f, at(x + grid_step), hi, skipped))
                    continue;
                ++report.points_checked;
                const double second = lo[static_cast<size_t>(i)] -
                                      2.0 * mid[static_cast<size_t>(i)] +
                                      hi[static_cast<size_t>(i)];
                report.margin = std::min(report.margin, second);
                if (second < -kConvexTolerance) {
                    report.passed = false;
                    report.strict = false;
                    report.witness = PropertyWitness{at(x), i, i, second, 0.0,
                                                     "negative second difference in own coordinate"};
                    finish(report, skipped);
                    return report;
                }
                if (!(second > kStrictTolerance)) report.strict = false;
            }
        }
    }
    finish(report, skipped);
    return report;
}

PropertyReport check_cross_concave(const RuleFn& f, int engines, std::vector<double> epsilon_grid,
                                   std::uint64_t seed) {
    if (engines < 2) throw ValidationError("cross-concavity needs at least two engines");
    if (epsilon_grid.empty()) throw ValidationError("epsilon grid cannot be empty");
    std::sort(epsilon_grid.begin(), epsilon_grid.end());
    for (double e : epsilon_grid)
        if (!(e > 0.0 && e < 1.0)) throw ValidationError("epsilons must lie in (0,1)");

    PropertyReport report;
    report.property = "cross-concave";
    report.passed = true;
    long skipped = 0;

    Rng rng(seed);
    const double step = 1.0 / 16;
    const int contexts = engines == 2 ? 1 : 25;
    double smallest_passing = std::numeric_limits<double>::infinity();

    for (int c = 0; c < contexts; ++c) {
        SatisfactionProfile rest(static_cast<size_t>(engines), 0.0);
        for (int j = 2; j < engines; ++j) {
            if (c == 0) rest[static_cast<size_t>(j)] = 0.5;
            else rest[static_cast<size_t>(j)] = rng.uniform();
        }
        for (int a = 0; a <= 16; ++a) {
            for (int b = a + 1; b <= 16; ++b) {
                const double x = a * step;
                const double y = b * step;
                auto lead = [&](double first, double second) {
                    SatisfactionProfile p = rest;
                    p[0] = first;
                    p[1] = second;
                    return p;
                };
                for (double eps : epsilon_grid) {
                    if (x + eps > 1.0 || y - eps < 0.0) continue;
                    std::vector<double> up, base, top, down;
                    if (!eval_or_skip(f, lead(x + eps, y), up, skipped) ||
                        !eval_or_skip(f, lead(x, y), base, skipped) ||
                        !eval_or_skip(f, lead(y, x), top, skipped) ||
                        !eval_or_skip(f, lead(y - eps, x), down, skipped))
                        continue;
                    ++report.points_checked;
                    const double catching = up[0] - base[0];
                    const double retreating = top[0] - down[0];
                    if (!(catching > retreating)) {
                        report.passed = false;
                        report.witness = PropertyWitness{
                            lead(x, y), 0, 1, catching, retreating,
                            "catching up moved the rule no more than an equal retreat at epsilon " +
                                format_real(eps)};
                        finish(report, skipped);
                        return report;
                    }
                    smallest_passing = std::min(smallest_passing, eps);
                }
            }
        }
    }
    report.margin = smallest_passing;
    report.note = "strict inequality held at every sampled epsilon";
    finish(report, skipped);
    return report;
}

PropertyReport check_monotone(const SelectionRule& rule, double grid_step, int samples,
                              std::uint64_t seed) {
    return check_monotone(rule_fn(rule), rule.engine_count(), grid_step, samples, seed);
}
PropertyReport check_non_indifferent(const SelectionRule& rule, double grid_step,
                                     std::uint64_t seed) {
    return check_non_indifferent(rule_fn(rule), rule.engine_count(), grid_step, seed);
}
PropertyReport check_convex(const SelectionRule& rule, double grid_step, std::uint64_t seed) {
    return check_convex(rule_fn(rule), rule.engine_count(), grid_step, seed);
}
PropertyReport check_cross_concave(const SelectionRule& rule, std::vector<double> epsilon_grid,
                                   std::uint64_t seed) {
    return check_cross_concave(rule_fn(rule), rule.engine_count(), std::move(epsilon_grid), seed);
}

} // namespace searchgame
