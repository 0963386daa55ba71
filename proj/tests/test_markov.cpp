#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "searchgame/markov.hpp"
#include "searchgame/rules.hpp"

using namespace searchgame;

namespace {

MarkovUserModel stay_or_swap() {
    // Stay forever on success, swap on failure.
    return MarkovUserModel({{1.0, 0.0}, {0.0, 1.0}}, {{0.0, 1.0}, {1.0, 0.0}});
}

} // namespace

TEST_CASE("stationary distribution by linear solve") {
    const auto model = stay_or_swap();
    SUBCASE("symmetric satisfaction gives an even split") {
        for (double c : {0.0, 0.3, 0.9}) {
            const auto pi = stationary(model, {c, c});
            CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    SUBCASE("asymmetric satisfaction favors the sticky engine") {
        const auto pi = stationary(model, {0.5, 0.0});
        CHECK(pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("uniform switch model is uniform at zero satisfaction") {
        const auto pi = stationary(uniform_switch_model(3), {0.0, 0.0, 0.0});
        for (double x : pi) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("reducible chains are reported with the disconnected states") {
        // Both engines absorb: satisfied users never leave, and q = 1 kills
        // the failure transitions.
        CHECK_THROWS_WITH_AS((void)stationary(stay_or_swap(), {1.0, 1.0}),
                             doctest::Contains("reducible"), SolverError);
    }
}

TEST_CASE("power iteration agrees with the linear solve") {
    Rng rng(23);
    for (int k : {2, 3, 5}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto model = testgen::random_model(k, rng);
            SatisfactionProfile q(static_cast<size_t>(k));
            for (double& x : q) x = rng.uniform();
            const auto direct = stationary(model, q);
            const auto powered = stationary_power(model, q);
            for (int i = 0; i < k; ++i)
                CHECK(direct[static_cast<size_t>(i)] ==
                      doctest::Approx(powered[static_cast<size_t>(i)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("return times") {
    const auto model = stay_or_swap();
    SUBCASE("geometric stay of the opposing state") {
        const auto rt0 = return_times(model, {0.7, 0.0}, 0);
        CHECK(!rt0.success_defined); // the success exit never happens
        CHECK(rt0.failure_defined);
        CHECK(rt0.r_failure == doctest::Approx(1.0).epsilon(1e-12));
        const auto rt_half = return_times(model, {0.7, 0.5}, 0);
        CHECK(rt_half.r_failure == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("symmetric three-state switcher") {
        // Leaving takes one round, the walk spends two more away on average,
        // so each state holds a third of the time: 1 / (1 + 1*1*2) = 1/3.
        const auto uniform = uniform_switch_model(3);
        for (int i = 0; i < 3; ++i) {
            const auto rt = return_times(uniform, {0.0, 0.0, 0.0}, i);
            CHECK(rt.failure_defined);
            CHECK(rt.r_failure == doctest::Approx(2.0).epsilon(1e-12));
        }
    }
    SUBCASE("return times ignore the own coordinate") {
        Rng rng(31);
        for (int trial = 0; trial < 10; ++trial) {
            const auto model = testgen::random_model(3, rng);
            SatisfactionProfile q{0.4, rng.uniform(), rng.uniform()};
            const auto base = return_times(model, q, 0);
            for (double own : {0.3, 0.5}) {
                SatisfactionProfile shifted = q;
                shifted[0] = own;
                const auto moved = return_times(model, shifted, 0);
                CHECK(moved.r_success == doctest::Approx(base.r_success).epsilon(1e-10));
                CHECK(moved.r_failure == doctest::Approx(base.r_failure).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("closed form stationary distribution") {
    SUBCASE("matches the linear solve on the swap model") {
        const auto pi = closed_form_stationary(stay_or_swap(), {0.5, 0.0});
        CHECK(pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("agrees with the linear solve on random models") {
        Rng rng(42);
        for (int k : {2, 3, 4, 5}) {
            for (int trial = 0; trial < 25; ++trial) {
                const auto model = testgen::random_model(k, rng);
                SatisfactionProfile q(static_cast<size_t>(k));
                for (double& x : q) x = rng.uniform();
                const auto direct = stationary(model, q);
                const auto closed = closed_form_stationary(model, q);
                for (int i = 0; i < k; ++i)
                    CHECK(closed[static_cast<size_t>(i)] ==
                          doctest::Approx(direct[static_cast<size_t>(i)]).epsilon(1e-10));
            }
        }
    }
    SUBCASE("symmetric roles give equal mass") {
        const auto pi = closed_form_stationary(uniform_switch_model(4), {0.3, 0.3, 0.7, 0.7});
        CHECK(pi[0] == doctest::Approx(pi[1]).epsilon(1e-12));
        CHECK(pi[2] == doctest::Approx(pi[3]).epsilon(1e-12));
    }
    SUBCASE("equal exit rates make the own coordinate irrelevant") {
        // success == failure: satisfaction does not change behavior.
        Rng rng(15);
        const auto matrix = testgen::random_stochastic(3, rng);
        const MarkovUserModel model(matrix, matrix);
        const auto a = closed_form_stationary(model, {0.2, 0.5, 0.9});
        const auto b = closed_form_stationary(model, {0.8, 0.5, 0.9});
        CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-12));
    }
}

TEST_CASE("stationary derivatives") {
    SUBCASE("closed form matches central differences") {
        Rng rng(7);
        for (int trial = 0; trial < 15; ++trial) {
            const int k = 2 + rng.below(3);
            const auto model = testgen::random_model(k, rng);
            SatisfactionProfile q(static_cast<size_t>(k));
            for (double& x : q) x = 0.1 + 0.8 * rng.uniform();
            for (int i = 0; i < k; ++i) {
                const auto deriv = stationary_derivatives(model, q, i);
                const double h = 1e-5;
                auto pi_at = [&](double v) {
                    SatisfactionProfile shifted = q;
                    shifted[static_cast<size_t>(i)] = v;
                    return closed_form_stationary(model, shifted)[static_cast<size_t>(i)];
                };
                const double qi = q[static_cast<size_t>(i)];
                const double fd1 = (pi_at(qi + h) - pi_at(qi - h)) / (2.0 * h);
                const double fd2 = (pi_at(qi + h) - 2.0 * pi_at(qi) + pi_at(qi - h)) / (h * h);
                CHECK(deriv.first == doctest::Approx(fd1).epsilon(1e-6));
                CHECK(deriv.second ==
                      doctest::Approx(fd2).epsilon(1e-4).scale(std::abs(deriv.second) + 1.0));
            }
        }
    }
    SUBCASE("monotone models have nonnegative slope and positive curvature") {
        Rng rng(19);
        for (int trial = 0; trial < 10; ++trial) {
            const auto model = testgen::random_strictly_monotone_model(3, rng);
            SatisfactionProfile q{rng.uniform(), rng.uniform(), rng.uniform()};
            for (int i = 0; i < 3; ++i) {
                const auto deriv = stationary_derivatives(model, q, i);
                CHECK(deriv.first >= 0.0);
                CHECK(deriv.second > 0.0);
            }
        }
    }
    SUBCASE("balanced exits flatten the stationary mass") {
        const MarkovUserModel model({{0.5, 0.5}, {0.5, 0.5}}, {{0.5, 0.5}, {0.5, 0.5}});
        const auto deriv = stationary_derivatives(model, {0.3, 0.6}, 0);
        CHECK(deriv.first == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(deriv.second == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("model monotonicity check") {
    SUBCASE("stay-or-swap is strictly monotone") {
        const auto report = check_markov_monotone(stay_or_swap());
        CHECK(report.passed);
        CHECK(report.strict);
    }
    SUBCASE("identical matrices are monotone but not strictly") {
        Rng rng(3);
        const auto matrix = testgen::random_stochastic(3, rng);
        const auto report = check_markov_monotone(MarkovUserModel(matrix, matrix));
        CHECK(report.passed);
        CHECK(!report.strict);
    }
    SUBCASE("leaving after success fails the check") {
        const MarkovUserModel inverted({{0.0, 1.0}, {1.0, 0.0}}, {{1.0, 0.0}, {0.0, 1.0}});
        const auto report = check_markov_monotone(inverted);
        CHECK(!report.passed);
        CHECK(report.witness.has_value());
    }
}

TEST_CASE("the switch-on-failure rule is the induced stationary rule") {
    Rng rng(57);
    for (int k : {2, 3, 4}) {
        const auto rule = SelectionRule::markovian_basic(k);
        const auto model = uniform_switch_model(k);
        for (int trial = 0; trial < 20; ++trial) {
            SatisfactionProfile q(static_cast<size_t>(k));
            for (double& x : q) x = 0.95 * rng.uniform();
            const auto f = rule.evaluate(q);
            const auto pi = stationary(model, q);
            for (int i = 0; i < k; ++i)
                CHECK(f[static_cast<size_t>(i)] ==
                      doctest::Approx(pi[static_cast<size_t>(i)]).epsilon(1e-10));
        }
    }
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(MarkovUserModel({{0.5, 0.4}, {0.5, 0.5}}, {{0.5, 0.5}, {0.5, 0.5}}),
                    ValidationError);
    CHECK_THROWS_AS(MarkovUserModel({{1.0}}, {{1.0}}), ValidationError);
    // Disconnected at every profile: two self-loops.
    CHECK_THROWS_AS(MarkovUserModel({{1.0, 0.0}, {0.0, 1.0}}, {{1.0, 0.0}, {0.0, 1.0}}),
                    SolverError);
}
