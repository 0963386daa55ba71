// Command-line front end: generate named instances, run solvers and property
// checks, verify equilibrium candidates, and report welfare ratios.
//
// Exit codes: 0 success, 2 invalid input or failed validation, 3 solver
// non-convergence.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "searchgame/equilibrium.hpp"
#include "searchgame/json_io.hpp"
#include "searchgame/scenarios.hpp"
#include "searchgame/welfare.hpp"

namespace {

using searchgame::json;

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw searchgame::ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw searchgame::ValidationError("cannot write '" + path + "'");
    out << data;
}

json parse_json(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw searchgame::ValidationError("malformed JSON in '" + path + "': " + e.what());
    }
}

searchgame::Instance load_instance(const std::string& path) {
    return searchgame::instance_from_json(parse_json(read_file(path), path));
}

struct Emitter {
    std::string command;
    std::string digest = "-";
    std::string out_path;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void emit(const json& results) const {
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        json envelope{{"command", command},
                      {"instance_digest", digest},
                      {"results", results},
                      {"version", kVersion},
                      {"wall_time_ms", ms}};
        const std::string text = searchgame::canonical_dump(envelope);
        std::cout << text;
        if (!out_path.empty()) write_file(out_path, text);
    }
};

std::vector<double> parse_q(const std::string& text) {
    std::vector<double> q;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        q.push_back(std::strtod(item.c_str(), nullptr));
    }
    if (q.empty()) throw searchgame::ValidationError("--q must list satisfaction probabilities");
    return q;
}

json verification_json(const searchgame::EquilibriumReport& report) {
    return searchgame::report_to_json(report);
}

// ---------------------------------------------------------------------------

struct ScenarioArgs {
    std::string name;
    bool list = false;
    std::optional<int> engines, pages;
    std::optional<double> beta;
    std::uint64_t seed = 42;
    double scale = 1e-6;
    std::string out, profiles_out;
};

int run_scenario(const ScenarioArgs& args, Emitter& emitter) {
    if (args.list) {
        json catalog = json::array();
        for (const auto& info : searchgame::scenario_catalog())
            catalog.push_back(json{{"name", info.name},
                                   {"description", info.description},
                                   {"defaults", info.defaults}});
        emitter.emit(json{{"catalog", std::move(catalog)}});
        return 0;
    }
    if (args.name.empty())
        throw searchgame::ValidationError("scenario: provide --name or --list");
    searchgame::ScenarioParams params;
    params.engines = args.engines;
    params.pages = args.pages;
    params.beta = args.beta;
    params.seed = args.seed;
    params.perturb_scale = args.scale;
    const searchgame::Scenario scenario = searchgame::generate_scenario(args.name, params);

    const json instance_json = searchgame::instance_to_json(scenario.instance);
    emitter.digest = searchgame::content_digest(searchgame::canonical_dump(instance_json));
    if (!args.out.empty()) write_file(args.out, searchgame::canonical_dump(instance_json));
    if (!args.profiles_out.empty())
        write_file(args.profiles_out,
                   searchgame::canonical_dump(searchgame::profiles_to_json(scenario.profiles)));

    Emitter reporting = emitter;
    reporting.out_path.clear(); // --out already holds the instance file
    reporting.emit(searchgame::scenario_to_json(scenario));
    return 0;
}

struct SolveArgs {
    std::string instance_path, method = "closed-form", profile_path, out;
    double epsilon = 1e-6;
    int grid = 12;
    std::uint64_t seed = 42;
};

int run_solve(const SolveArgs& args, Emitter& emitter) {
    const searchgame::Instance instance = load_instance(args.instance_path);
    emitter.digest = searchgame::content_digest(
        searchgame::canonical_dump(searchgame::instance_to_json(instance)));
    const int k = instance.config.num_engines;

    if (args.method == "closed-form") {
        if (instance.rule.kind() != searchgame::RuleKind::Proportional)
            throw searchgame::ValidationError(
                "the closed-form solver applies to the proportional rule");
        const auto [state, cert] = searchgame::symmetric_equilibrium_proportional(
            instance.dist, instance.config.beta, k);
        searchgame::SingletonProfile profile(static_cast<size_t>(k), state.page_probs);
        const auto report =
            searchgame::verify_epsilon_nash(profile, instance, args.epsilon, args.seed);
        json probs = json::array();
        for (double p : state.page_probs.probs()) probs.push_back(p);
        emitter.emit(json{{"method", "closed-form"},
                          {"z", state.z},
                          {"lambda_prime", state.lambda_prime},
                          {"strategy", std::move(probs)},
                          {"hessian",
                           json{{"beta_threshold", cert.beta_threshold},
                                {"globally_concave", cert.globally_concave},
                                {"negative_at_symmetric_point", cert.negative_at_symmetric_point},
                                {"diagonal", cert.diagonal}}},
                          {"verification", verification_json(report)}});
        return 0;
    }

    if (args.method == "best-response") {
        searchgame::SingletonProfile profile;
        if (!args.profile_path.empty()) {
            auto parsed = searchgame::profile_from_json(
                parse_json(read_file(args.profile_path), args.profile_path), instance.config);
            if (!std::holds_alternative<searchgame::SingletonProfile>(parsed))
                throw searchgame::ValidationError(
                    "best-response dynamics needs page-vector strategies");
            profile = std::get<searchgame::SingletonProfile>(std::move(parsed));
        } else {
            profile.assign(static_cast<size_t>(k),
                           searchgame::SingletonStrategy(instance.dist.page_probs()));
        }
        const int max_rounds = 200;
        int rounds = 0;
        double last_gain = 0.0;
        for (; rounds < max_rounds; ++rounds) {
            double round_gain = 0.0;
            for (int i = 0; i < k; ++i) {
                searchgame::SingletonProfile opponents;
                for (int j = 0; j < k; ++j)
                    if (j != i) opponents.push_back(profile[static_cast<size_t>(j)]);
                const auto payoffs = searchgame::engine_payoffs(
                    profile, instance.rule, instance.config, instance.dist);
                const auto br = searchgame::best_response_singleton(
                    instance.rule, instance.dist, instance.config.beta, opponents, i, args.seed);
                const double gain = br.payoff - payoffs[static_cast<size_t>(i)];
                if (gain > args.epsilon) {
                    profile[static_cast<size_t>(i)] = br.strategy;
                    round_gain = std::max(round_gain, gain);
                }
            }
            last_gain = round_gain;
            if (round_gain <= args.epsilon) break;
        }
        if (rounds == max_rounds)
            throw searchgame::SolverError(
                "best-response dynamics did not converge in " + std::to_string(max_rounds) +
                " rounds; last improvement " + searchgame::format_real(last_gain));
        const auto report =
            searchgame::verify_epsilon_nash(profile, instance, args.epsilon, args.seed);
        emitter.emit(json{{"method", "best-response"},
                          {"rounds", rounds + 1},
                          {"profile", searchgame::profile_to_json(profile)},
                          {"verification", verification_json(report)}});
        return 0;
    }

    if (args.method == "brute-force") {
        const auto found =
            searchgame::brute_force_equilibria(instance, args.grid, args.epsilon, args.seed);
        json list = json::array();
        for (const auto& [profile, report] : found)
            list.push_back(json{{"profile", searchgame::profile_to_json(profile)},
                                {"verification", verification_json(report)}});
        emitter.emit(json{{"method", "brute-force"},
                          {"grid", args.grid},
                          {"count", found.size()},
                          {"equilibria", std::move(list)}});
        return 0;
    }

    throw searchgame::ValidationError("unknown method '" + args.method +
                                      "'; use closed-form, best-response or brute-force");
}

struct VerifyArgs {
    std::string instance_path, profile_path, out;
    double epsilon = 1e-6;
    std::uint64_t seed = 42;
};

int run_verify(const VerifyArgs& args, Emitter& emitter) {
    const searchgame::Instance instance = load_instance(args.instance_path);
    emitter.digest = searchgame::content_digest(
        searchgame::canonical_dump(searchgame::instance_to_json(instance)));
    auto parsed = searchgame::profile_from_json(
        parse_json(read_file(args.profile_path), args.profile_path), instance.config);
    searchgame::EquilibriumReport report;
    if (std::holds_alternative<searchgame::SingletonProfile>(parsed)) {
        report = searchgame::verify_epsilon_nash(std::get<searchgame::SingletonProfile>(parsed),
                                                 instance, args.epsilon, args.seed);
    } else {
        report = searchgame::verify_epsilon_nash(std::get<searchgame::ChainProfile>(parsed),
                                                 instance, args.epsilon);
    }
    emitter.emit(verification_json(report));
    return 0;
}

struct PoaArgs {
    std::string instance_path, equilibria_path, out, format = "json";
    double epsilon = 1e-6;
    int grid = 12;
    std::uint64_t seed = 42;
};

int run_poa(const PoaArgs& args, Emitter& emitter) {
    const searchgame::Instance instance = load_instance(args.instance_path);
    emitter.digest = searchgame::content_digest(
        searchgame::canonical_dump(searchgame::instance_to_json(instance)));
    const int k = instance.config.num_engines;

    std::vector<searchgame::SingletonProfile> equilibria;
    std::vector<double> equilibrium_welfares;
    bool welfares_precomputed = false;
    if (!args.equilibria_path.empty()) {
        const json listed = parse_json(read_file(args.equilibria_path), args.equilibria_path);
        if (!listed.contains("profiles"))
            throw searchgame::ValidationError("equilibria: missing 'profiles'");
        size_t index = 0;
        for (const auto& p : listed.at("profiles")) {
            auto parsed = searchgame::profile_from_json(p, instance.config);
            searchgame::EquilibriumReport report;
            if (std::holds_alternative<searchgame::SingletonProfile>(parsed)) {
                report = searchgame::verify_epsilon_nash(
                    std::get<searchgame::SingletonProfile>(parsed), instance, args.epsilon,
                    args.seed);
            } else {
                report = searchgame::verify_epsilon_nash(
                    std::get<searchgame::ChainProfile>(parsed), instance, args.epsilon);
            }
            if (!report.is_equilibrium)
                throw searchgame::ValidationError(
                    "profile " + std::to_string(index) + " fails verification: max regret " +
                    searchgame::format_real(
                        *std::max_element(report.regrets.begin(), report.regrets.end())));
            equilibrium_welfares.push_back(report.welfare_value);
            ++index;
        }
        welfares_precomputed = true;
    } else if (instance.rule.kind() == searchgame::RuleKind::Proportional &&
               instance.config.beta > 0.0 && instance.is_singleton()) {
        const auto [state, cert] = searchgame::symmetric_equilibrium_proportional(
            instance.dist, instance.config.beta, k);
        searchgame::SingletonProfile profile(static_cast<size_t>(k), state.page_probs);
        if (searchgame::verify_epsilon_nash(profile, instance, args.epsilon, args.seed)
                .is_equilibrium)
            equilibria.push_back(std::move(profile));
    } else if (instance.is_singleton()) {
        for (const auto& [profile, report] :
             searchgame::brute_force_equilibria(instance, args.grid, args.epsilon, args.seed))
            if (report.is_equilibrium) equilibria.push_back(profile);
    } else {
        throw searchgame::ValidationError(
            "provide --equilibria for instances without a built-in solver path");
    }

    searchgame::OptimumResult opt;
    if (instance.is_singleton() && instance.config.max_threshold == 1) {
        opt = searchgame::social_optimum(instance.dist, instance.config, searchgame::OptMode::TopK);
    } else {
        try {
            opt = searchgame::social_optimum(instance.dist, instance.config,
                                             searchgame::OptMode::Exhaustive);
        } catch (const searchgame::ValidationError&) {
            opt = searchgame::social_optimum(instance.dist, instance.config,
                                             searchgame::OptMode::Greedy);
        }
    }

    const searchgame::PoaReport report =
        welfares_precomputed ? searchgame::poa_report_welfares(equilibrium_welfares, opt)
                             : searchgame::poa_report(instance, equilibria, opt);
    if (args.format == "csv") {
        std::ostringstream csv;
        csv << "equilibrium,welfare,opt_welfare,poa,pos\n";
        for (size_t i = 0; i < report.equilibrium_welfares.size(); ++i) {
            csv << i << ',' << searchgame::format_real(report.equilibrium_welfares[i]) << ','
                << searchgame::format_real(report.opt_welfare) << ','
                << (report.poa ? searchgame::format_real(*report.poa) : "") << ','
                << (report.pos ? searchgame::format_real(*report.pos) : "") << '\n';
        }
        if (report.equilibrium_welfares.empty())
            csv << ",," << searchgame::format_real(report.opt_welfare) << ",,\n";
        std::cout << csv.str();
        if (!args.out.empty()) write_file(args.out, csv.str());
        return 0;
    }
    emitter.emit(json{{"poa", searchgame::report_to_json(report)},
                      {"optimum", searchgame::optimum_to_json(opt)},
                      {"verified_equilibria", welfares_precomputed ? equilibrium_welfares.size()
                                                                   : equilibria.size()}});
    return 0;
}

struct MarkovArgs {
    std::string model_path, q_text, out, format = "json";
    std::uint64_t seed = 42;
};

int run_markov(const MarkovArgs& args, Emitter& emitter) {
    const json model_json = parse_json(read_file(args.model_path), args.model_path);
    const searchgame::MarkovUserModel model = searchgame::model_from_json(model_json);
    emitter.digest =
        searchgame::content_digest(searchgame::canonical_dump(searchgame::model_to_json(model)));
    const int k = model.engine_count();
    std::vector<double> q(static_cast<size_t>(k), 0.5);
    if (!args.q_text.empty()) {
        q = parse_q(args.q_text);
        if (static_cast<int>(q.size()) != k)
            throw searchgame::ValidationError("--q must list one probability per engine");
    }

    const auto pi = searchgame::stationary(model, q);
    const auto pi_closed = searchgame::closed_form_stationary(model, q);
    const auto pi_power = searchgame::stationary_power(model, q);
    double power_diff = 0.0, closed_diff = 0.0;
    for (int i = 0; i < k; ++i) {
        power_diff = std::max(power_diff, std::abs(pi[static_cast<size_t>(i)] -
                                                   pi_power[static_cast<size_t>(i)]));
        closed_diff = std::max(closed_diff, std::abs(pi[static_cast<size_t>(i)] -
                                                     pi_closed[static_cast<size_t>(i)]));
    }

    json states = json::array();
    for (int i = 0; i < k; ++i) {
        const auto rt = searchgame::return_times(model, q, i);
        const auto deriv = searchgame::stationary_derivatives(model, q, i);
        json s{{"state", i},
               {"first_derivative", deriv.first},
               {"second_derivative", deriv.second}};
        s["return_after_success"] = rt.success_defined ? json(rt.r_success) : json(nullptr);
        s["return_after_failure"] = rt.failure_defined ? json(rt.r_failure) : json(nullptr);
        states.push_back(std::move(s));
    }

    const auto monotone = searchgame::check_markov_monotone(model, 50, args.seed);
    const auto convex =
        searchgame::check_convex(searchgame::SelectionRule::induced_markov(model));

    if (args.format == "text") {
        std::ostringstream text;
        text << "state  q         stationary  closed_form  d/dq        d2/dq2      r_succ      r_fail\n";
        char line[256];
        for (int i = 0; i < k; ++i) {
            const auto rt = searchgame::return_times(model, q, i);
            const auto deriv = searchgame::stationary_derivatives(model, q, i);
            std::snprintf(line, sizeof(line),
                          "%-6d %-9.6f %-11.8f %-12.8f %-11.6f %-11.6f %-11s %-11s\n", i,
                          q[static_cast<size_t>(i)], pi[static_cast<size_t>(i)],
                          pi_closed[static_cast<size_t>(i)], deriv.first, deriv.second,
                          rt.success_defined ? searchgame::format_real(rt.r_success).c_str() : "-",
                          rt.failure_defined ? searchgame::format_real(rt.r_failure).c_str() : "-");
            text << line;
        }
        text << "monotone: " << (monotone.passed ? (monotone.strict ? "strict" : "yes") : "no")
             << "\ninduced rule convex: "
             << (convex.passed ? (convex.strict ? "strict" : "yes") : "no") << "\n";
        std::cout << text.str();
        if (!args.out.empty()) write_file(args.out, text.str());
        return 0;
    }

    emitter.emit(json{{"q", q},
                      {"stationary", pi},
                      {"closed_form", pi_closed},
                      {"closed_form_max_diff", closed_diff},
                      {"power_iteration_max_diff", power_diff},
                      {"states", std::move(states)},
                      {"monotone", searchgame::report_to_json(monotone)},
                      {"induced_rule_convex", searchgame::report_to_json(convex)}});
    return 0;
}

struct RulecheckArgs {
    std::string instance_path, rule_name, out;
    int engines = 0;
    int grid = 16;
    int samples = 200;
    std::uint64_t seed = 42;
};

int run_rulecheck(const RulecheckArgs& args, Emitter& emitter) {
    std::optional<searchgame::SelectionRule> rule;
    if (!args.instance_path.empty()) {
        const searchgame::Instance instance = load_instance(args.instance_path);
        emitter.digest = searchgame::content_digest(
            searchgame::canonical_dump(searchgame::instance_to_json(instance)));
        rule = instance.rule;
    } else if (!args.rule_name.empty()) {
        const int k = args.engines;
        if (args.rule_name == "proportional") rule = searchgame::SelectionRule::proportional(k);
        else if (args.rule_name == "markovian") rule = searchgame::SelectionRule::markovian_basic(k);
        else if (args.rule_name == "majority") rule = searchgame::SelectionRule::majority(k);
        else if (args.rule_name == "gamma_power") rule = searchgame::SelectionRule::gamma_power();
        else
            throw searchgame::ValidationError(
                "rulecheck --rule supports proportional, markovian, majority and gamma_power; "
                "use --instance for parameterized rules");
    } else {
        throw searchgame::ValidationError("rulecheck: provide --instance or --rule");
    }

    const double step = 1.0 / args.grid;
    emitter.emit(json{
        {"rule", rule->name()},
        {"engines", rule->engine_count()},
        {"monotone",
         searchgame::report_to_json(searchgame::check_monotone(*rule, step, args.samples, args.seed))},
        {"non_indifferent",
         searchgame::report_to_json(searchgame::check_non_indifferent(*rule, step, args.seed))},
        {"convex", searchgame::report_to_json(searchgame::check_convex(*rule, step, args.seed))},
        {"cross_concave", searchgame::report_to_json(searchgame::check_cross_concave(
                              *rule, {1.0 / 64, 1.0 / 128, 1.0 / 256}, args.seed))}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Competitive search game toolkit"};
    app.require_subcommand(1);

    std::string command_echo;
    for (int i = 0; i < argc; ++i) {
        if (i) command_echo += ' ';
        command_echo += argv[i];
    }

    ScenarioArgs scenario_args;
    auto* scenario = app.add_subcommand("scenario", "Generate a named instance family");
    scenario->add_option("--name", scenario_args.name, "Scenario name");
    scenario->add_flag("--list", scenario_args.list, "Print the scenario catalog");
    int k_opt = 0, n_opt = 0;
    double beta_opt = -1.0;
    scenario->add_option("--k", k_opt, "Number of engines");
    scenario->add_option("--pages", n_opt, "Number of pages");
    scenario->add_option("--beta", beta_opt, "Display factor");
    scenario->add_option("--seed", scenario_args.seed, "Seed");
    scenario->add_option("--scale", scenario_args.scale, "Perturbation scale");
    scenario->add_option("--out", scenario_args.out, "Write the instance JSON here");
    scenario->add_option("--profiles-out", scenario_args.profiles_out,
                         "Write the named profiles here");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Run an equilibrium solver");
    solve->add_option("--instance", solve_args.instance_path, "Instance JSON")->required();
    solve->add_option("--method", solve_args.method, "closed-form | best-response | brute-force");
    solve->add_option("--profile", solve_args.profile_path, "Starting profile (best-response)");
    solve->add_option("--epsilon", solve_args.epsilon, "Regret tolerance");
    solve->add_option("--grid", solve_args.grid, "Simplex grid denominator (brute-force)");
    solve->add_option("--seed", solve_args.seed, "Seed");
    solve->add_option("--out", solve_args.out, "Write the report here");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Check a profile for epsilon-equilibrium");
    verify->add_option("--instance", verify_args.instance_path, "Instance JSON")->required();
    verify->add_option("--profile", verify_args.profile_path, "Profile JSON")->required();
    verify->add_option("--epsilon", verify_args.epsilon, "Regret tolerance");
    verify->add_option("--seed", verify_args.seed, "Seed");
    verify->add_option("--out", verify_args.out, "Write the report here");

    PoaArgs poa_args;
    auto* poa = app.add_subcommand("poa", "Welfare ratios against the social optimum");
    poa->add_option("--instance", poa_args.instance_path, "Instance JSON")->required();
    poa->add_option("--equilibria", poa_args.equilibria_path, "Equilibrium profiles JSON");
    poa->add_option("--epsilon", poa_args.epsilon, "Regret tolerance");
    poa->add_option("--grid", poa_args.grid, "Brute-force grid denominator");
    poa->add_option("--seed", poa_args.seed, "Seed");
    poa->add_option("--format", poa_args.format, "json | csv");
    poa->add_option("--out", poa_args.out, "Write the report here");

    MarkovArgs markov_args;
    auto* markov = app.add_subcommand("markov", "Stationary analysis of a user model");
    markov->add_option("--model", markov_args.model_path, "Model JSON")->required();
    markov->add_option("--q", markov_args.q_text, "Comma-separated satisfaction profile");
    markov->add_option("--format", markov_args.format, "json | text");
    markov->add_option("--seed", markov_args.seed, "Seed");
    markov->add_option("--out", markov_args.out, "Write the report here");

    RulecheckArgs rule_args;
    auto* rulecheck = app.add_subcommand("rulecheck", "Certify selection-rule properties");
    rulecheck->add_option("--instance", rule_args.instance_path, "Instance JSON");
    rulecheck->add_option("--rule", rule_args.rule_name, "Built-in rule name");
    rulecheck->add_option("--k", rule_args.engines, "Engines (with --rule)");
    rulecheck->add_option("--grid", rule_args.grid, "Reciprocal grid step");
    rulecheck->add_option("--samples", rule_args.samples, "Random sample count");
    rulecheck->add_option("--seed", rule_args.seed, "Seed");
    rulecheck->add_option("--out", rule_args.out, "Write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        Emitter emitter;
        emitter.command = command_echo;
        if (scenario->parsed()) {
            if (scenario->count("--k")) scenario_args.engines = k_opt;
            if (scenario->count("--pages")) scenario_args.pages = n_opt;
            if (scenario->count("--beta")) scenario_args.beta = beta_opt;
            return run_scenario(scenario_args, emitter);
        }
        if (solve->parsed()) {
            emitter.out_path = solve_args.out;
            return run_solve(solve_args, emitter);
        }
        if (verify->parsed()) {
            emitter.out_path = verify_args.out;
            return run_verify(verify_args, emitter);
        }
        if (poa->parsed()) {
            emitter.out_path = poa_args.format == "csv" ? "" : poa_args.out;
            return run_poa(poa_args, emitter);
        }
        if (markov->parsed()) {
            emitter.out_path = markov_args.out;
            return run_markov(markov_args, emitter);
        }
        if (rulecheck->parsed()) {
            emitter.out_path = rule_args.out;
            return run_rulecheck(rule_args, emitter);
        }
        return 2;
    } catch (const searchgame::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const searchgame::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const searchgame::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
