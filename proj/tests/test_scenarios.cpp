#include <doctest.h>

#include <cmath>

#include "searchgame/equilibrium.hpp"
#include "searchgame/game.hpp"
#include "searchgame/json_io.hpp"
#include "searchgame/scenarios.hpp"
#include "searchgame/welfare.hpp"

using namespace searchgame;

TEST_CASE("worst-case ratio scenario") {
    ScenarioParams params;
    params.engines = 2;
    params.beta = 0.0;
    const auto scen = generate_scenario("tight_poa", params);
    const auto gamma = scen.instance.dist.page_probs();
    CHECK(gamma[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(gamma[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(*scen.expected.poa == doctest::Approx(1.5).epsilon(1e-12));

    ScenarioParams five;
    five.engines = 5;
    five.beta = 0.5;
    const auto big = generate_scenario("tight_poa", five);
    CHECK(*big.expected.poa == doctest::Approx((10.0 - 1.0 - 0.5) / (5.0 - 0.5)).epsilon(1e-12));
}

TEST_CASE("stability-loss scenarios") {
    SUBCASE("sqrt family") {
        ScenarioParams params;
        params.pages = 400;
        const auto scen = generate_scenario("pos_sqrt", params);
        const auto gamma = scen.instance.dist.page_probs();
        CHECK(gamma[0] == doctest::Approx(0.05).epsilon(1e-4));
        CHECK(*scen.expected.pos == doctest::Approx(14.214).epsilon(0.02));
        // The stated ratio equals the direct evaluation of the generated demand.
        double squares = 0.0, top2 = gamma[0] + gamma[1];
        for (double g : gamma) squares += g * g;
        CHECK(*scen.expected.pos == doctest::Approx(top2 / squares).epsilon(1e-12));
    }
    SUBCASE("linear family") {
        ScenarioParams params;
        params.engines = 8;
        params.pages = 64;
        const auto scen = generate_scenario("pos_linear", params);
        CHECK(*scen.expected.pos >= 0.8 * 8);
        CHECK(*scen.expected.pos == doctest::Approx(4032.0 / 449.0).epsilon(1e-3));
    }
}

TEST_CASE("partial display revenue scenarios") {
    SUBCASE("near-uniform demand loses a factor near k") {
        ScenarioParams params;
        params.engines = 4;
        params.pages = 64;
        params.beta = 0.2;
        const auto scen = generate_scenario("intermediate_uniform", params);
        CHECK(*scen.expected.poa >= 2.0);
        const auto gamma = scen.instance.dist.page_probs();
        for (double g : gamma) {
            CHECK(g >= 1.0 / 64 - 1.0 / (64.0 * 64.0));
            CHECK(g <= 1.0 / 64 + 1.0 / (64.0 * 64.0));
        }
    }
    SUBCASE("parameter floor is enforced") {
        ScenarioParams params;
        params.engines = 4;
        params.pages = 16;
        params.beta = 0.3; // floor is 8/24
        CHECK_THROWS_AS((void)generate_scenario("intermediate_uniform", params), ValidationError);
    }
    SUBCASE("sqrt family with head pages") {
        const auto scen = generate_scenario("intermediate_sqrt", {});
        CHECK(*scen.expected.poa >= 3.0);
        const auto report = verify_epsilon_nash(scen.profiles[0], scen.instance, 1e-6);
        CHECK(report.is_equilibrium);
    }
    SUBCASE("sqrt family rejects a display factor below its floor") {
        ScenarioParams params;
        params.pages = 100;
        params.beta = 0.55;
        CHECK_THROWS_AS((void)generate_scenario("intermediate_sqrt", params), ValidationError);
    }
}

TEST_CASE("counterexample scenarios") {
    SUBCASE("no pure equilibrium") {
        const auto scen = generate_scenario("nonexistence", {});
        CHECK(scen.profiles.empty());
        CHECK(scen.expected.has_pure_equilibrium == false);
        CHECK(is_general_position(scen.instance.dist).status == GeneralPosition::InPosition);
    }
    SUBCASE("indifferent rule keeps a mixed equilibrium with tiny welfare") {
        ScenarioParams params;
        params.pages = 6;
        const auto scen = generate_scenario("non_indifference", params);
        CHECK(scen.instance.config.num_engines == 7);
        const auto report =
            verify_epsilon_nash(scen.profiles[0], scen.instance, 1e-9);
        CHECK(report.is_equilibrium);
        CHECK(report.welfare_value <= 4.0 / (3.0 * 6));
        CHECK(*scen.expected.opt_welfare == 1.0);
    }
    SUBCASE("degenerate demand keeps a low-welfare equilibrium") {
        ScenarioParams params;
        params.engines = 3;
        const auto scen = generate_scenario("general_position_fail", params);
        CHECK(is_general_position(scen.instance.dist).status == GeneralPosition::Degenerate);
        const auto report = verify_epsilon_nash(scen.profiles[0], scen.instance, 1e-9);
        CHECK(report.is_equilibrium);
        CHECK(report.welfare_value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(*scen.expected.poa == doctest::Approx(1.5).epsilon(1e-12));
    }
}

TEST_CASE("scenario instances round-trip bit-identically") {
    for (const auto& info : scenario_catalog()) {
        ScenarioParams params;
        if (info.name == "pos_sqrt" || info.name == "intermediate_sqrt") params.pages = 100;
        if (info.name == "pos_linear") params.pages = 32;
        const auto scen = generate_scenario(info.name, params);
        const json first = instance_to_json(scen.instance);
        const std::string once = canonical_dump(first);
        const Instance reloaded = instance_from_json(json::parse(once));
        const std::string twice = canonical_dump(instance_to_json(reloaded));
        CHECK(once == twice);
    }
}

TEST_CASE("generation is deterministic in the seed") {
    ScenarioParams params;
    params.seed = 7;
    const auto a = generate_scenario("nonexistence", params);
    const auto b = generate_scenario("nonexistence", params);
    CHECK(canonical_dump(instance_to_json(a.instance)) ==
          canonical_dump(instance_to_json(b.instance)));
    params.seed = 8;
    const auto c = generate_scenario("nonexistence", params);
    CHECK(canonical_dump(instance_to_json(a.instance)) !=
          canonical_dump(instance_to_json(c.instance)));
}

TEST_CASE("unknown scenario names are rejected") {
    CHECK_THROWS_AS((void)generate_scenario("mystery", {}), ValidationError);
    CHECK(scenario_catalog().size() == 8);
}
