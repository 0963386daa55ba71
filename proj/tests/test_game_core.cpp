#include <doctest.h>

#include "helpers.hpp"
#include "searchgame/game.hpp"
#include "searchgame/instance.hpp"

using namespace searchgame;

namespace {

GameConfig cfg(double beta, int k, int n, int t = 1) { return GameConfig{beta, k, n, t}; }

TypeDistribution two_thirds_dist() {
    return TypeDistribution::singleton({2.0 / 3.0, 1.0 / 3.0});
}

} // namespace

TEST_CASE("satisfaction probability of chain strategies") {
    const GameConfig config = cfg(0.0, 2, 4, 2);

    SUBCASE("deterministic chain hits its own first page") {
        const auto s = PrefixChainStrategy::deterministic({0, 1}, config);
        CHECK(satisfaction_probability(s, UserType{{0}, 1}, config) == 1.0);
    }
    SUBCASE("an even mixture splits the indicator") {
        const PrefixChainStrategy s({{{0, 2}, 0.5}, {{1, 2}, 0.5}}, config);
        CHECK(satisfaction_probability(s, UserType{{0}, 1}, config) == 0.5);
    }
    SUBCASE("only atoms whose prefix covers the desired set count") {
        const PrefixChainStrategy s({{{0, 1}, 0.3}, {{2, 3}, 0.7}}, config);
        CHECK(satisfaction_probability(s, UserType{{1}, 2}, config) == doctest::Approx(0.3).epsilon(1e-15));
    }
    SUBCASE("threshold above the cap is rejected") {
        const auto s = PrefixChainStrategy::deterministic({0, 1}, config);
        CHECK_THROWS_AS((void)satisfaction_probability(s, UserType{{0}, 3}, config),
                        ValidationError);
    }
}

TEST_CASE("profile satisfaction is componentwise") {
    const GameConfig config = cfg(0.0, 2, 4, 2);
    const PrefixChainStrategy mixed({{{0, 1}, 0.3}, {{2, 3}, 0.7}}, config);
    const auto det = PrefixChainStrategy::deterministic({1, 2}, config);
    const auto q = profile_satisfaction(ChainProfile{mixed, det}, UserType{{1}, 2}, config);
    CHECK(q[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(q[1] == 1.0);

    SUBCASE("engine count mismatch is rejected") {
        CHECK_THROWS_AS((void)profile_satisfaction(ChainProfile{det}, UserType{{1}, 1}, config),
                        ValidationError);
    }
}

TEST_CASE("engine payoffs on the two-page head-heavy instance") {
    const auto dist = two_thirds_dist();
    const auto rule = SelectionRule::proportional(2);
    const SingletonProfile both{SingletonStrategy::deterministic(0, 2),
                                SingletonStrategy::deterministic(0, 2)};

    SUBCASE("no display revenue") {
        const auto u = engine_payoffs(both, rule, cfg(0.0, 2, 2), dist);
        CHECK(u[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(u[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("full display revenue") {
        const auto u = engine_payoffs(both, rule, cfg(1.0, 2, 2), dist);
        CHECK(u[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("identical strategies under a symmetric rule earn the same") {
        Rng rng(7);
        const auto strategy = testgen::random_strategy(2, rng);
        const SingletonProfile same{strategy, strategy};
        for (const auto& r : {SelectionRule::proportional(2), SelectionRule::markovian_basic(2),
                              SelectionRule::majority(2)}) {
            const auto u = engine_payoffs(same, r, cfg(0.4, 2, 2), dist);
            CHECK(u[0] == doctest::Approx(u[1]).epsilon(1e-14));
        }
    }
}

TEST_CASE("welfare of singleton profiles") {
    const auto dist = two_thirds_dist();
    const auto rule = SelectionRule::proportional(2);

    SUBCASE("pooling on the head page strands the tail") {
        const SingletonProfile both{SingletonStrategy::deterministic(0, 2),
                                    SingletonStrategy::deterministic(0, 2)};
        CHECK(welfare(both, rule, cfg(0.0, 2, 2), dist) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("full coverage with distinct pages satisfies everyone") {
        const auto uniform = TypeDistribution::singleton({0.5, 0.5});
        const SingletonProfile split{SingletonStrategy::deterministic(0, 2),
                                     SingletonStrategy::deterministic(1, 2)};
        CHECK(welfare(split, rule, cfg(0.0, 2, 2), uniform) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(welfare(split, SelectionRule::majority(2), cfg(0.0, 2, 2), uniform) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("pooling on the tail page") {
        const SingletonProfile both{SingletonStrategy::deterministic(1, 2),
                                    SingletonStrategy::deterministic(1, 2)};
        CHECK(welfare(both, rule, cfg(0.0, 2, 2), dist) ==
              doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
}

TEST_CASE("payoff-welfare identity") {
    Rng rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 2 + rng.below(3);
        const int n = 2 + rng.below(4);
        const double beta = rng.uniform();
        const GameConfig config = cfg(beta, k, n);
        const auto dist = testgen::random_singleton_dist(n, rng);
        const auto rule = testgen::random_rule(k, rng);
        const auto profile = testgen::random_profile(k, n, rng);

        const auto payoffs = engine_payoffs(profile, rule, config, dist);
        const double w = welfare(profile, rule, config, dist);
        double total = 0.0;
        for (double u : payoffs) {
            CHECK(u >= 0.0);
            CHECK(u <= 1.0 + 1e-12);
            total += u;
        }
        CHECK(w >= 0.0);
        CHECK(w <= 1.0 + 1e-12);
        CHECK(total == doctest::Approx(beta + (1.0 - beta) * w).epsilon(1e-10));
        if (beta == 0.0) CHECK(total == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("payoff-welfare identity on chain instances") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const int k = 2 + rng.below(2);
        const GameConfig config = cfg(rng.uniform(), k, 4, 2);
        const auto dist = testgen::random_general_dist(4, 2, rng);
        const auto rule = testgen::random_rule(k, rng);
        const auto profile = testgen::random_chain_profile(config, rng);
        const auto payoffs = engine_payoffs(profile, rule, config, dist);
        const double w = welfare(profile, rule, config, dist);
        double total = 0.0;
        for (double u : payoffs) total += u;
        CHECK(total == doctest::Approx(config.beta + (1.0 - config.beta) * w).epsilon(1e-10));
    }
}

TEST_CASE("satisfaction probability is affine in atom weights") {
    const GameConfig config = cfg(0.0, 2, 5, 2);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = testgen::random_chain_strategy(config, rng);
        const auto b = testgen::random_chain_strategy(config, rng);
        std::vector<ChainAtom> mixture;
        for (const auto& atom : a.atoms()) mixture.push_back({atom.slots, atom.weight * 0.5});
        for (const auto& atom : b.atoms()) mixture.push_back({atom.slots, atom.weight * 0.5});
        const PrefixChainStrategy half(mixture, config, /*normalize=*/true);
        const UserType type{{0, 2}, 2};
        const double lhs = satisfaction_probability(half, type, config);
        const double rhs = 0.5 * (satisfaction_probability(a, type, config) +
                                  satisfaction_probability(b, type, config));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("general position detection") {
    SUBCASE("equal subset sums are caught") {
        const auto report = is_general_position(TypeDistribution::singleton({0.5, 0.3, 0.2}));
        CHECK(report.status == GeneralPosition::Degenerate);
        CHECK(!report.witness_a.empty());
    }
    SUBCASE("perturbation restores general position") {
        const auto dist = TypeDistribution::singleton({0.5, 0.3, 0.2});
        const auto perturbed = perturb_general_position(dist, 1e-6, 42);
        CHECK(is_general_position(perturbed).status == GeneralPosition::InPosition);
        double total = 0.0;
        for (const auto& e : perturbed.entries()) total += e.prob;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two distinct masses are in general position") {
        CHECK(is_general_position(TypeDistribution::singleton({0.6, 0.4})).status ==
              GeneralPosition::InPosition);
    }
    SUBCASE("large supports report unchecked") {
        std::vector<double> probs(25, 1.0 / 25.0);
        CHECK(is_general_position(TypeDistribution::singleton(probs, true)).status ==
              GeneralPosition::Unchecked);
    }
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(TypeDistribution::singleton({0.5, 0.4}), ValidationError);
    CHECK_THROWS_AS(TypeDistribution({{UserType{{0}, 1}, 1.0}}, 2), ValidationError);
    CHECK_THROWS_AS(TypeDistribution({{UserType{{0}, 1}, 0.5}, {UserType{{0}, 1}, 0.5}}, 1),
                    ValidationError);
    CHECK_THROWS_AS(TypeDistribution({{UserType{{}, 1}, 1.0}}, 1), ValidationError);
    CHECK_THROWS_AS(TypeDistribution({{UserType{{0}, 0}, 1.0}}, 1), ValidationError);
    CHECK_NOTHROW(TypeDistribution::singleton({3.0, 1.0}, /*normalize=*/true));
}

TEST_CASE("strategy validation") {
    const GameConfig config = cfg(0.0, 2, 3, 2);
    CHECK_THROWS_AS(PrefixChainStrategy({{{0}, 1.0}}, config), ValidationError);
    CHECK_THROWS_AS(PrefixChainStrategy({{{0, 0}, 1.0}}, config), ValidationError);
    CHECK_THROWS_AS(PrefixChainStrategy({{{0, 3}, 1.0}}, config), ValidationError);
    CHECK_THROWS_AS(PrefixChainStrategy({{{0, 1}, 0.5}, {{1, 2}, 0.4}}, config), ValidationError);
    CHECK_THROWS_AS(SingletonStrategy({0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS(SingletonStrategy({1.2, -0.2}), ValidationError);
    CHECK_NOTHROW(SingletonStrategy({0.5, 0.6}, /*normalize=*/true));
}
