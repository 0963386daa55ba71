#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "searchgame/rules.hpp"

using namespace searchgame;

namespace {

void check_distribution(const std::vector<double>& f) {
    double total = 0.0;
    for (double x : f) {
        CHECK(x >= 0.0);
        total += x;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

// Fixture rules for the property checks.
RuleFn broken_rule(int k) {
    return [k](const SatisfactionProfile& q) {
        std::vector<double> f(static_cast<size_t>(k), q[0] / (k - 1.0));
        f[0] = 1.0 - q[0];
        return f;
    };
}

RuleFn constant_rule(int k) {
    return [k](const SatisfactionProfile&) {
        return std::vector<double>(static_cast<size_t>(k), 1.0 / k);
    };
}

} // namespace

TEST_CASE("rule evaluation matches the closed forms") {
    SUBCASE("proportional") {
        const auto rule = SelectionRule::proportional(2);
        const auto f = rule.evaluate({0.5, 0.25});
        CHECK(f[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(f[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        const auto at_zero = rule.evaluate({0.0, 0.0});
        CHECK(at_zero[0] == 0.5);
        CHECK(at_zero[1] == 0.5);
    }
    SUBCASE("switch-on-failure shares") {
        const auto rule = SelectionRule::markovian_basic(2);
        const auto f = rule.evaluate({0.5, 0.0});
        CHECK(f[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(f[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        const auto certain = rule.evaluate({1.0, 0.5});
        CHECK(certain[0] == 1.0);
        CHECK(certain[1] == 0.0);
        const auto both = rule.evaluate({1.0, 1.0});
        CHECK(both[0] == 0.5);
        CHECK(both[1] == 0.5);
    }
    SUBCASE("majority with ties") {
        const auto rule = SelectionRule::majority(3);
        const auto f = rule.evaluate({0.7, 0.7, 0.2});
        CHECK(f[0] == 0.5);
        CHECK(f[1] == 0.5);
        CHECK(f[2] == 0.0);
    }
    SUBCASE("cyclic momentum shares") {
        const auto rule = SelectionRule::gamma_power();
        CHECK(rule.evaluate({1.0, 1.0, 0.0})[0] == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(rule.evaluate({1.0, 0.0, 1.0})[0] == doctest::Approx(0.2).epsilon(1e-14));
    }
    SUBCASE("weighted proportional") {
        const auto rule = SelectionRule::weighted_proportional({4.0, 1.0});
        const auto f = rule.evaluate({0.5, 1.0});
        CHECK(f[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("truncated rule routes everything to a sole displayer") {
        const auto rule = SelectionRule::truncated_indifferent(4); // 5 engines
        const auto sole = rule.evaluate({0.0, 0.3, 0.0, 0.0, 0.9});
        CHECK(sole[1] == 1.0);
        CHECK(sole[4] == 0.0);
        const auto spread = rule.evaluate({0.1, 0.1, 0.1, 0.1, 0.0});
        check_distribution(spread);
        CHECK(spread[0] == doctest::Approx(std::min(0.25, 0.5 * (1.0 - 0.3))).epsilon(1e-14));
    }
    SUBCASE("out-of-range profiles are rejected") {
        CHECK_THROWS_AS((void)SelectionRule::proportional(2).evaluate({1.2, 0.0}),
                        ValidationError);
        CHECK_THROWS_AS((void)SelectionRule::proportional(2).evaluate({0.5}), ValidationError);
    }
}

TEST_CASE("rule outputs are distributions") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 2 + rng.below(3);
        const auto rule = testgen::random_rule(k, rng);
        SatisfactionProfile q(static_cast<size_t>(k));
        for (double& x : q) x = rng.uniform();
        check_distribution(rule.evaluate(q));
    }
    const auto trunc = SelectionRule::truncated_indifferent(3);
    for (int trial = 0; trial < 50; ++trial) {
        SatisfactionProfile q(4);
        for (double& x : q) x = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
        check_distribution(trunc.evaluate(q));
    }
}

TEST_CASE("symmetric rules commute with engine relabeling") {
    Rng rng(9);
    for (int k : {2, 3, 4}) {
        std::vector<int> perm(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) perm[static_cast<size_t>(i)] = i;
        for (int trial = 0; trial < 5; ++trial) {
            SatisfactionProfile q(static_cast<size_t>(k));
            for (double& x : q) x = rng.uniform();
            for (const auto& rule :
                 {SelectionRule::proportional(k), SelectionRule::markovian_basic(k),
                  SelectionRule::majority(k)}) {
                const auto f = rule.evaluate(q);
                std::sort(perm.begin(), perm.end());
                do {
                    SatisfactionProfile qp(static_cast<size_t>(k));
                    for (int i = 0; i < k; ++i)
                        qp[static_cast<size_t>(i)] = q[static_cast<size_t>(perm[static_cast<size_t>(i)])];
                    const auto fp = rule.evaluate(qp);
                    for (int i = 0; i < k; ++i)
                        CHECK(fp[static_cast<size_t>(i)] ==
                              doctest::Approx(f[static_cast<size_t>(perm[static_cast<size_t>(i)])])
                                  .epsilon(1e-12));
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
    }
}

TEST_CASE("proportional shares are continuous at the origin") {
    const auto rule = SelectionRule::proportional(3);
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        const auto f = rule.evaluate({eps, eps, eps});
        for (double x : f) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("monotonicity check") {
    CHECK(check_monotone(SelectionRule::proportional(2)).passed);
    CHECK(check_monotone(SelectionRule::majority(3)).passed);
    CHECK(check_monotone(SelectionRule::markovian_basic(2)).passed);
    const auto broken = check_monotone(broken_rule(2), 2);
    CHECK(!broken.passed);
    CHECK(broken.witness.has_value());
}

TEST_CASE("non-indifference check") {
    CHECK(check_non_indifferent(SelectionRule::proportional(3)).passed);
    CHECK(check_non_indifferent(SelectionRule::majority(2)).passed);
    const auto trunc = check_non_indifferent(SelectionRule::truncated_indifferent(4));
    CHECK(!trunc.passed);
    CHECK(trunc.witness.has_value());
}

TEST_CASE("convexity check") {
    SUBCASE("proportional is concave in the own coordinate") {
        const auto report = check_convex(SelectionRule::proportional(2));
        CHECK(!report.passed);
        CHECK(report.witness.has_value());
    }
    SUBCASE("a strictly monotone induced rule is strictly convex") {
        Rng rng(17);
        const auto model = testgen::random_strictly_monotone_model(3, rng);
        const auto report = check_convex(SelectionRule::induced_markov(model));
        CHECK(report.passed);
        CHECK(report.strict);
    }
    SUBCASE("a monotone-but-not-strict induced rule is convex, not strictly") {
        // Equal matrices: satisfaction never changes behavior, so the induced
        // shares are constant in the own coordinate.
        Rng rng(29);
        const auto matrix = testgen::random_stochastic(3, rng);
        const MarkovUserModel model(matrix, matrix);
        CHECK(check_markov_monotone(model).passed);
        const auto report = check_convex(SelectionRule::induced_markov(model));
        CHECK(report.passed);
        CHECK(!report.strict);
    }
    SUBCASE("the constant rule is convex but not strictly") {
        const auto report = check_convex(constant_rule(3), 3);
        CHECK(report.passed);
        CHECK(!report.strict);
    }
}

TEST_CASE("cross-concavity check") {
    CHECK(check_cross_concave(SelectionRule::proportional(2)).passed);
    CHECK(check_cross_concave(SelectionRule::proportional(3)).passed);
    const auto constant = check_cross_concave(constant_rule(2), 2);
    CHECK(!constant.passed);
}

TEST_CASE("rule construction guards") {
    CHECK_THROWS_AS(SelectionRule::weighted_proportional({1.0, -1.0}), ValidationError);
    CHECK_THROWS_AS(SelectionRule::proportional(1), ValidationError);
    CHECK_THROWS_AS(SelectionRule::truncated_indifferent(1), ValidationError);
    CHECK(SelectionRule::gamma_power().engine_count() == 3);
    CHECK(!SelectionRule::gamma_power().is_symmetric());
    CHECK(SelectionRule::majority(4).is_symmetric());
}
