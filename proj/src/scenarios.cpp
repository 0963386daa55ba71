#include "searchgame/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "searchgame/equilibrium.hpp"
#include "searchgame/game.hpp"
#include "searchgame/welfare.hpp"

namespace searchgame {

namespace {

int param_or(const std::optional<int>& value, int fallback, const char* what, int lo, int hi) {
    const int v = value.value_or(fallback);
    if (v < lo || v > hi)
        throw ValidationError(std::string(what) + " must lie in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "], got " + std::to_string(v));
    return v;
}

std::vector<double> perturbed_within(int count, double center_sum_to_one, double half_band,
                                     Rng& rng) {
    // Jitter around the uniform weight, renormalized; the band is chosen so
    // renormalization cannot push entries outside it.
    std::vector<double> probs(static_cast<size_t>(count));
    for (double& p : probs) p = center_sum_to_one * (1.0 + half_band * (rng.uniform() - 0.5));
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double& p : probs) p /= total;
    return probs;
}

TypeDistribution general_position_singleton(const std::vector<double>& probs,
                                            std::uint64_t seed, double scale) {
    TypeDistribution dist = TypeDistribution::singleton(probs, /*normalize=*/true);
    return perturb_general_position(dist, scale, seed);
}

double sum_top(const std::vector<double>& gamma, int k) {
    std::vector<double> sorted = gamma;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double s = 0.0;
    for (int i = 0; i < k && i < static_cast<int>(sorted.size()); ++i)
        s += sorted[static_cast<size_t>(i)];
    return s;
}

double sum_squares(const std::vector<double>& gamma) {
    double s = 0.0;
    for (double g : gamma) s += g * g;
    return s;
}

Scenario tight_poa(const ScenarioParams& params) {
    const int k = param_or(params.engines, 2, "engines", 2, 64);
    const double beta = params.beta.value_or(0.0);
    if (!(beta >= 0.0 && beta <= 1.0)) throw ValidationError("beta must lie in [0,1]");

    const double denom = 2.0 * k - 1.0 - beta;
    std::vector<double> gamma(static_cast<size_t>(k), 1.0 / denom);
    gamma[0] = (k - beta) / denom;

    Scenario s{"tight_poa",
               "head-heavy demand where pooling on the top page is an equilibrium; the "
               "welfare ratio meets the worst-case bound for convex rules exactly",
               Instance{GameConfig{beta, k, k, 1},
                        TypeDistribution::singleton(gamma, /*normalize=*/true),
                        SelectionRule::markovian_basic(k)},
               {},
               {}};
    s.instance.validate();

    SingletonProfile all_on_top(static_cast<size_t>(k), SingletonStrategy::deterministic(0, k));
    s.profiles.push_back(std::move(all_on_top));

    const double eq_welfare = s.instance.dist.page_probs()[0];
    s.expected.opt_welfare = 1.0;
    s.expected.equilibrium_welfare = eq_welfare;
    s.expected.poa = denom / (k - beta);
    s.expected.pos = denom / (k - beta);
    s.expected.equilibrium_epsilon = 1e-9;
    s.expected.has_pure_equilibrium = true;
    return s;
}

Scenario pos_family(const ScenarioParams& params, bool sqrt_head) {
    const int k = sqrt_head ? 2 : param_or(params.engines, 8, "engines", 2, 64);
    const int default_pages = sqrt_head ? 400 : 64;
    const int n = param_or(params.pages, default_pages, "pages", k + 1, 100000);

    std::vector<double> gamma(static_cast<size_t>(n), 0.0);
    if (sqrt_head) {
        const double head = 1.0 / std::sqrt(static_cast<double>(n));
        gamma[0] = gamma[1] = head;
        const double tail = (1.0 - 2.0 * head) / (n - 2);
        if (!(tail > 0.0)) throw ValidationError("pages must satisfy 2/sqrt(N) < 1");
        for (int i = 2; i < n; ++i) gamma[static_cast<size_t>(i)] = tail;
    } else {
        const double head = 1.0 / (k + 1.0);
        for (int i = 0; i < k; ++i) gamma[static_cast<size_t>(i)] = head;
        const double tail = (1.0 - k * head) / (n - k);
        for (int i = k; i < n; ++i) gamma[static_cast<size_t>(i)] = tail;
    }

    Scenario s{sqrt_head ? "pos_sqrt" : "pos_linear",
               sqrt_head ? "two frequent pages over a long uniform tail; under full display "
                           "revenue the unique equilibrium mirrors demand and loses a sqrt(N) "
                           "factor"
                         : "k comparable head pages over a uniform tail; the demand-mirroring "
                           "equilibrium loses a factor linear in k",
               Instance{GameConfig{1.0, k, n, 1},
                        general_position_singleton(gamma, params.seed, params.perturb_scale),
                        SelectionRule::proportional(k)},
               {},
               {}};
    s.instance.validate();

    const std::vector<double> g = s.instance.dist.page_probs();
    SingletonProfile mirror(static_cast<size_t>(k), SingletonStrategy(g));
    s.profiles.push_back(std::move(mirror));

    const double eq_welfare = sum_squares(g);
    const double opt = sum_top(g, k);
    s.expected.opt_welfare = opt;
    s.expected.equilibrium_welfare = eq_welfare;
    s.expected.poa = opt / eq_welfare;
    s.expected.pos = opt / eq_welfare;
    s.expected.equilibrium_epsilon = 1e-6;
    s.expected.has_pure_equilibrium = true;
    return s;
}

Scenario intermediate_uniform(const ScenarioParams& params) {
    const int k = param_or(params.engines, 2, "engines", 2, 64);
    const int n = param_or(params.pages, 64, "pages", k + 1, 100000);
    const double beta = params.beta.value_or(0.5);
    const double floor = 2.0 * k / (n + 2.0 * k);
    if (!(beta > floor && beta <= 1.0))
        throw ValidationError("intermediate_uniform requires beta > 2k/(N+2k) = " +
                              format_real(floor));

    Rng rng(params.seed);
    // Entries stay within 1/N +- 1/N^2 even after renormalization.
    const std::vector<double> gamma =
        perturbed_within(n, 1.0 / n, 0.5 / static_cast<double>(n), rng);

    Scenario s{"intermediate_uniform",
               "near-uniform demand with partial display revenue; the symmetric equilibrium "
               "spreads thin and loses a factor linear in k",
               Instance{GameConfig{beta, k, n, 1},
                        TypeDistribution::singleton(gamma, /*normalize=*/true),
                        SelectionRule::proportional(k)},
               {},
               {}};
    s.instance.validate();

    const auto [state, cert] =
        symmetric_equilibrium_proportional(s.instance.dist, beta, k);
    if (!cert.negative_at_symmetric_point)
        throw SolverError("expected a concave best response at the symmetric point");
    SingletonProfile symmetric(static_cast<size_t>(k), state.page_probs);
    s.profiles.push_back(std::move(symmetric));

    const std::vector<double> g = s.instance.dist.page_probs();
    double eq_welfare = 0.0;
    for (int i = 0; i < n; ++i)
        eq_welfare += g[static_cast<size_t>(i)] * state.page_probs[i];
    const double opt = sum_top(g, k);
    s.expected.opt_welfare = opt;
    s.expected.equilibrium_welfare = eq_welfare;
    s.expected.poa = opt / eq_welfare;
    s.expected.equilibrium_epsilon = 1e-6;
    s.expected.has_pure_equilibrium = true;
    return s;
}

Scenario intermediate_sqrt(const ScenarioParams& params) {
    const int n = param_or(params.pages, 100, "pages", 16, 100000);
    const int k = param_or(params.engines, 2, "engines", 2, 2);
    const double beta = params.beta.value_or(0.6);
    const double floor = 6.0 / std::sqrt(static_cast<double>(n));
    if (!(beta >= floor && beta <= 1.0))
        throw ValidationError("intermediate_sqrt requires beta >= 6/sqrt(N) = " +
                              format_real(floor));

    Rng rng(params.seed);
    const double root = std::sqrt(static_cast<double>(n));
    const double head = 1.25 / root;
    std::vector<double> gamma(static_cast<size_t>(n), 0.0);
    gamma[0] = head * (1.0 + 1e-7 * rng.uniform());
    gamma[1] = head * (1.0 + 1e-7 * rng.uniform());
    const double tail = (1.0 - gamma[0] - gamma[1]) / (n - 2);
    for (int i = 2; i < n; ++i)
        gamma[static_cast<size_t>(i)] = tail * (1.0 + 1e-7 * rng.uniform());

    Scenario s{"intermediate_sqrt",
               "two frequent pages over a near-uniform tail with partial display revenue; "
               "the symmetric equilibrium loses a sqrt(N) factor",
               Instance{GameConfig{beta, k, n, 1},
                        TypeDistribution::singleton(gamma, /*normalize=*/true),
                        SelectionRule::proportional(k)},
               {},
               {}};
    s.instance.validate();

    const std::vector<double> g = s.instance.dist.page_probs();
    if (n >= 64) {
        const double tail_floor = 1.0 / (n - 2.0) - 4.0 / std::pow(static_cast<double>(n), 1.5);
        for (int i = 0; i < n; ++i) {
            const double gi = g[static_cast<size_t>(i)];
            const bool ok = i < 2 ? (gi >= 1.0 / root && gi <= 2.0 / root)
                                  : (gi >= tail_floor && gi <= 2.0 / n);
            if (!ok)
                throw SolverError("generated demand fell outside the head/tail bands");
        }
    }

    const auto [state, cert] = symmetric_equilibrium_proportional(s.instance.dist, beta, k);
    if (!cert.negative_at_symmetric_point)
        throw SolverError("expected a concave best response at the symmetric point");
    SingletonProfile symmetric(static_cast<size_t>(k), state.page_probs);
    s.profiles.push_back(std::move(symmetric));

    double eq_welfare = 0.0;
    for (int i = 0; i < n; ++i)
        eq_welfare += g[static_cast<size_t>(i)] * state.page_probs[i];
    const double opt = sum_top(g, k);
    s.expected.opt_welfare = opt;
    s.expected.equilibrium_welfare = eq_welfare;
    s.expected.poa = opt / eq_welfare;
    s.expected.equilibrium_epsilon = 1e-6;
    s.expected.has_pure_equilibrium = true;
    return s;
}

Scenario nonexistence(const ScenarioParams& params) {
    const double beta = params.beta.value_or(0.0);
    if (beta != 0.0)
        throw ValidationError("the non-existence instance is a zero-display-revenue game");
    Scenario s{"nonexistence",
               "three engines, two pages, and a cyclic momentum-style rule under which every "
               "deterministic profile admits a profitable switch; no pure equilibrium exists",
               Instance{GameConfig{0.0, 3, 2, 1},
                        general_position_singleton({0.55, 0.45}, params.seed,
                                                   params.perturb_scale),
                        SelectionRule::gamma_power()},
               {},
               {}};
    s.instance.validate();
    const std::vector<double> g = s.instance.dist.page_probs();
    for (double gn : g)
        if (!(gn > 1.0 / 3.0 && gn < 2.0 / 3.0))
            throw SolverError("page demands must stay inside (1/3, 2/3)");
    s.expected.opt_welfare = 1.0;
    s.expected.has_pure_equilibrium = false;
    s.expected.notes.push_back("all 8 deterministic profiles admit an improving deviation");
    return s;
}

Scenario non_indifference(const ScenarioParams& params) {
    const int n = param_or(params.pages, 6, "pages", 2, 20);

    // Weights within [0.9, 1.1]/N stay inside the required [2/(3N), 4/(3N)]
    // band after renormalization; retry seeds until in general position.
    TypeDistribution dist = TypeDistribution::singleton(std::vector<double>(n, 1.0 / n), true);
    bool ok = false;
    for (int attempt = 0; attempt < 32 && !ok; ++attempt) {
        Rng rng(params.seed + static_cast<std::uint64_t>(attempt));
        std::vector<double> gamma = perturbed_within(n, 1.0 / n, 0.2, rng);
        dist = TypeDistribution::singleton(gamma, /*normalize=*/true);
        ok = is_general_position(dist).status == GeneralPosition::InPosition;
    }
    if (!ok) throw SolverError("could not reach general position for the demand weights");

    const int k = n + 1;
    Scenario s{"non_indifference",
               "one engine per page plus a spare, under a rule that ignores an engine's own "
               "quality; a fully mixed profile is an equilibrium with vanishing welfare",
               Instance{GameConfig{0.0, k, n, 1}, dist, SelectionRule::truncated_indifferent(n)},
               {},
               {}};
    s.instance.validate();

    const std::vector<double> g = dist.page_probs();
    for (double gn : g)
        if (!(gn >= 2.0 / (3.0 * n) && gn <= 4.0 / (3.0 * n)))
            throw SolverError("page demands must stay inside [2/(3N), 4/(3N)]");

    double inv_sum = 0.0;
    for (double gn : g) inv_sum += 1.0 / gn;
    const double x_const = 1.0 / inv_sum;
    std::vector<double> rho(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        rho[static_cast<size_t>(i)] =
            (g[static_cast<size_t>(i)] - x_const) / (g[static_cast<size_t>(i)] * (n - 1));
    const SingletonStrategy mixed(rho, /*normalize=*/true);

    const int best_page =
        static_cast<int>(std::max_element(g.begin(), g.end()) - g.begin());
    SingletonProfile profile(static_cast<size_t>(k), mixed);
    profile[static_cast<size_t>(n)] = SingletonStrategy::deterministic(best_page, n);
    s.profiles.push_back(std::move(profile));

    s.expected.opt_welfare = 1.0;
    s.expected.equilibrium_welfare = g[static_cast<size_t>(best_page)];
    s.expected.poa = 1.0 / g[static_cast<size_t>(best_page)];
    s.expected.equilibrium_epsilon = 1e-9;
    s.expected.has_pure_equilibrium = true;
    s.expected.notes.push_back("equilibrium welfare is at most 4/(3N) while the optimum covers "
                               "every page");
    return s;
}

Scenario general_position_fail(const ScenarioParams& params) {
    const int k = param_or(params.engines, 5, "engines", 3, 64);
    std::vector<double> weights(static_cast<size_t>(k), 1.0);
    weights[0] = static_cast<double>(k) * k;
    Scenario s{"general_position_fail",
               "uniform demand (deliberately degenerate) with a heavily favored engine; ties "
               "let a low-welfare profile stand as an equilibrium",
               Instance{GameConfig{0.0, k, k, 1},
                        TypeDistribution::singleton(std::vector<double>(k, 1.0 / k), true),
                        SelectionRule::weighted_proportional(std::move(weights))},
               {},
               {}};
    s.instance.validate();

    std::vector<double> spread(static_cast<size_t>(k), 0.0);
    for (int i = 0; i + 1 < k; ++i) spread[static_cast<size_t>(i)] = 1.0 / (k - 1.0);
    SingletonProfile profile;
    profile.emplace_back(spread, /*normalize=*/true);
    for (int i = 1; i < k; ++i)
        profile.push_back(SingletonStrategy::deterministic(k - 1, k));
    s.profiles.push_back(std::move(profile));

    s.expected.opt_welfare = 1.0;
    s.expected.equilibrium_welfare = 2.0 / k;
    s.expected.poa = static_cast<double>(k) / 2.0;
    s.expected.equilibrium_epsilon = 1e-9;
    s.expected.has_pure_equilibrium = true;
    return s;
}

} // namespace

Scenario generate_scenario(const std::string& name, const ScenarioParams& params) {
    if (name == "tight_poa") return tight_poa(params);
    if (name == "pos_linear") return pos_family(params, /*sqrt_head=*/false);
    if (name == "pos_sqrt") return pos_family(params, /*sqrt_head=*/true);
    if (name == "intermediate_uniform") return intermediate_uniform(params);
    if (name == "intermediate_sqrt") return intermediate_sqrt(params);
    if (name == "nonexistence") return nonexistence(params);
    if (name == "non_indifference") return non_indifference(params);
    if (name == "general_position_fail") return general_position_fail(params);
    throw ValidationError("unknown scenario '" + name + "'; see the catalog");
}

const std::vector<ScenarioInfo>& scenario_catalog() {
    static const std::vector<ScenarioInfo> catalog = {
        {"tight_poa", "worst-case welfare ratio met exactly by pooling on the top page",
         "k=2, beta=0"},
        {"pos_linear", "demand-mirroring equilibrium losing a factor linear in k", "k=8, N=64"},
        {"pos_sqrt", "demand-mirroring equilibrium losing a sqrt(N) factor", "N=400"},
        {"intermediate_uniform",
         "near-uniform demand, partial display revenue, thin symmetric equilibrium",
         "k=2, N=64, beta=0.5"},
        {"intermediate_sqrt",
         "two frequent pages, partial display revenue, sqrt(N) welfare loss",
         "k=2, N=100, beta=0.6"},
        {"nonexistence", "no pure equilibrium under a cyclic momentum-style rule",
         "k=3, N=2, beta=0"},
        {"non_indifference",
         "rule ignoring own quality lets a vanishing-welfare mixed profile stand",
         "N=6, k=N+1, beta=0"},
        {"general_position_fail",
         "degenerate uniform demand plus a favored engine yields welfare 2/k", "k=5, beta=0"},
    };
    return catalog;
}

} // namespace searchgame
