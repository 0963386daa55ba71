// Python bindings for the competitive search game toolkit. The main
// operations are exposed over plain lists/dicts; JSON-facing helpers accept
// and return serialized strings so files written by the CLI interoperate.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "searchgame/equilibrium.hpp"
#include "searchgame/json_io.hpp"
#include "searchgame/scenarios.hpp"
#include "searchgame/welfare.hpp"

namespace py = pybind11;
using namespace searchgame;

namespace {

Instance instance_from_text(const std::string& text) {
    return instance_from_json(json::parse(text));
}

py::dict property_report_dict(const PropertyReport& report) {
    py::dict d;
    d["property"] = report.property;
    d["passed"] = report.passed;
    d["strict"] = report.strict;
    d["points_checked"] = report.points_checked;
    d["margin"] = report.margin;
    d["note"] = report.note;
    if (report.witness) {
        py::dict w;
        w["q"] = report.witness->q;
        w["engine"] = report.witness->engine;
        w["coordinate"] = report.witness->coordinate;
        w["lhs"] = report.witness->lhs;
        w["rhs"] = report.witness->rhs;
        w["detail"] = report.witness->detail;
        d["witness"] = std::move(w);
    } else {
        d["witness"] = py::none();
    }
    return d;
}

py::dict equilibrium_report_dict(const EquilibriumReport& report) {
    py::dict d;
    d["epsilon"] = report.epsilon;
    d["is_equilibrium"] = report.is_equilibrium;
    d["regrets"] = report.regrets;
    d["payoffs"] = report.payoffs;
    d["welfare"] = report.welfare_value;
    py::list witnesses;
    for (const auto& w : report.witnesses) {
        if (!w) {
            witnesses.append(py::none());
            continue;
        }
        py::dict dev;
        dev["engine"] = w->engine;
        if (w->strategy) dev["strategy"] = w->strategy->probs();
        if (w->chain) dev["chain"] = *w->chain;
        dev["payoff"] = w->payoff;
        dev["gain"] = w->gain;
        witnesses.append(std::move(dev));
    }
    d["witnesses"] = std::move(witnesses);
    return d;
}

SingletonProfile profile_from_lists(const std::vector<std::vector<double>>& strategies) {
    SingletonProfile profile;
    profile.reserve(strategies.size());
    for (const auto& probs : strategies) profile.emplace_back(probs);
    return profile;
}

} // namespace

PYBIND11_MODULE(searchgame, m) {
    m.doc() = "Competitive search game toolkit: payoffs, selection rules, Markov user models, "
              "equilibria, and welfare analysis";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<GameConfig>(m, "GameConfig")
        .def(py::init([](double beta, int engines, int pages, int max_threshold) {
                 GameConfig c{beta, engines, pages, max_threshold};
                 c.validate();
                 return c;
             }),
             py::arg("beta"), py::arg("engines"), py::arg("pages"), py::arg("max_threshold") = 1)
        .def_readonly("beta", &GameConfig::beta)
        .def_readonly("engines", &GameConfig::num_engines)
        .def_readonly("pages", &GameConfig::num_pages)
        .def_readonly("max_threshold", &GameConfig::max_threshold);

    py::class_<TypeDistribution>(m, "TypeDistribution")
        .def_static(
            "singleton",
            [](const std::vector<double>& probs, bool normalize) {
                return TypeDistribution::singleton(probs, normalize);
            },
            py::arg("page_probs"), py::arg("normalize") = false)
        .def_property_readonly("pages", &TypeDistribution::num_pages)
        .def("page_probs", &TypeDistribution::page_probs)
        .def("is_singleton", &TypeDistribution::is_singleton);

    py::class_<SingletonStrategy>(m, "SingletonStrategy")
        .def(py::init<std::vector<double>, bool>(), py::arg("probs"), py::arg("normalize") = false)
        .def_static("deterministic", &SingletonStrategy::deterministic, py::arg("page"),
                    py::arg("pages"))
        .def_property_readonly("probs",
                               [](const SingletonStrategy& s) { return s.probs(); });

    py::class_<MarkovUserModel>(m, "MarkovUserModel")
        .def(py::init<Matrix, Matrix>(), py::arg("success"), py::arg("failure"))
        .def_property_readonly("engines", &MarkovUserModel::engine_count)
        .def_property_readonly("success", &MarkovUserModel::success)
        .def_property_readonly("failure", &MarkovUserModel::failure);

    py::class_<SelectionRule>(m, "SelectionRule")
        .def_static("proportional", &SelectionRule::proportional, py::arg("engines"))
        .def_static("markovian", &SelectionRule::markovian_basic, py::arg("engines"))
        .def_static("majority", &SelectionRule::majority, py::arg("engines"))
        .def_static("weighted_proportional", &SelectionRule::weighted_proportional,
                    py::arg("weights"))
        .def_static("gamma_power", &SelectionRule::gamma_power)
        .def_static("truncated_indifferent", &SelectionRule::truncated_indifferent,
                    py::arg("pages"))
        .def_static("induced_markov", &SelectionRule::induced_markov, py::arg("model"))
        .def("evaluate", &SelectionRule::evaluate, py::arg("q"))
        .def_property_readonly("engines", &SelectionRule::engine_count)
        .def_property_readonly("name", &SelectionRule::name)
        .def_property_readonly("symmetric", &SelectionRule::is_symmetric);

    py::class_<Instance>(m, "Instance")
        .def_property_readonly("config", [](const Instance& i) { return i.config; })
        .def_property_readonly("dist", [](const Instance& i) { return i.dist; })
        .def_property_readonly("rule", [](const Instance& i) { return i.rule; })
        .def("is_singleton", &Instance::is_singleton)
        .def("to_json", [](const Instance& i) { return canonical_dump(instance_to_json(i)); });

    m.def("instance_from_json", &instance_from_text, py::arg("text"),
          "Parse an instance from its JSON text");
    m.def(
        "make_instance",
        [](const GameConfig& config, const TypeDistribution& dist, const SelectionRule& rule) {
            Instance inst{config, dist, rule};
            inst.validate();
            return inst;
        },
        py::arg("config"), py::arg("dist"), py::arg("rule"));

    m.def(
        "engine_payoffs",
        [](const std::vector<std::vector<double>>& profile, const Instance& inst) {
            return engine_payoffs(profile_from_lists(profile), inst.rule, inst.config, inst.dist);
        },
        py::arg("profile"), py::arg("instance"),
        "Per-engine expected payoffs of a singleton profile");
    m.def(
        "welfare",
        [](const std::vector<std::vector<double>>& profile, const Instance& inst) {
            return welfare(profile_from_lists(profile), inst.rule, inst.config, inst.dist);
        },
        py::arg("profile"), py::arg("instance"),
        "Probability that a user is satisfied by its chosen engine");

    m.def(
        "is_general_position",
        [](const TypeDistribution& dist) {
            const auto report = is_general_position(dist);
            return report.status == GeneralPosition::InPosition
                       ? "in-position"
                       : (report.status == GeneralPosition::Degenerate ? "degenerate"
                                                                       : "unchecked");
        },
        py::arg("dist"));
    m.def("perturb_general_position", &perturb_general_position, py::arg("dist"),
          py::arg("scale"), py::arg("seed"));

    m.def("stationary", &stationary, py::arg("model"), py::arg("q"));
    m.def("stationary_power", &stationary_power, py::arg("model"), py::arg("q"),
          py::arg("tol") = 1e-14, py::arg("max_iters") = 1000000);
    m.def("closed_form_stationary", &closed_form_stationary, py::arg("model"), py::arg("q"));
    m.def(
        "return_times",
        [](const MarkovUserModel& model, const SatisfactionProfile& q, int state) {
            const auto rt = return_times(model, q, state);
            py::dict d;
            d["after_success"] = rt.success_defined ? py::cast(rt.r_success) : py::none();
            d["after_failure"] = rt.failure_defined ? py::cast(rt.r_failure) : py::none();
            return d;
        },
        py::arg("model"), py::arg("q"), py::arg("state"));
    m.def(
        "stationary_derivatives",
        [](const MarkovUserModel& model, const SatisfactionProfile& q, int state) {
            const auto d = stationary_derivatives(model, q, state);
            return py::make_tuple(d.first, d.second);
        },
        py::arg("model"), py::arg("q"), py::arg("state"));
    m.def("uniform_switch_model", &uniform_switch_model, py::arg("engines"));
    m.def(
        "check_markov_monotone",
        [](const MarkovUserModel& model, int samples, std::uint64_t seed) {
            return property_report_dict(check_markov_monotone(model, samples, seed));
        },
        py::arg("model"), py::arg("samples") = 50, py::arg("seed") = 42);

    m.def(
        "check_monotone",
        [](const SelectionRule& rule, double grid_step, int samples, std::uint64_t seed) {
            return property_report_dict(check_monotone(rule, grid_step, samples, seed));
        },
        py::arg("rule"), py::arg("grid_step") = 1.0 / 16, py::arg("samples") = 200,
        py::arg("seed") = 42);
    m.def(
        "check_non_indifferent",
        [](const SelectionRule& rule, double grid_step, std::uint64_t seed) {
            return property_report_dict(check_non_indifferent(rule, grid_step, seed));
        },
        py::arg("rule"), py::arg("grid_step") = 1.0 / 16, py::arg("seed") = 42);
    m.def(
        "check_convex",
        [](const SelectionRule& rule, double grid_step, std::uint64_t seed) {
            return property_report_dict(check_convex(rule, grid_step, seed));
        },
        py::arg("rule"), py::arg("grid_step") = 1.0 / 16, py::arg("seed") = 42);
    m.def(
        "check_cross_concave",
        [](const SelectionRule& rule, std::vector<double> epsilon_grid, std::uint64_t seed) {
            return property_report_dict(check_cross_concave(rule, std::move(epsilon_grid), seed));
        },
        py::arg("rule"), py::arg("epsilon_grid") = std::vector<double>{1.0 / 64, 1.0 / 128, 1.0 / 256},
        py::arg("seed") = 42);

    m.def(
        "best_response",
        [](const Instance& inst, const std::vector<std::vector<double>>& opponents,
           int engine_index, std::uint64_t seed) {
            const auto br = best_response_singleton(inst.rule, inst.dist, inst.config.beta,
                                                    profile_from_lists(opponents), engine_index,
                                                    seed);
            return py::make_tuple(br.strategy.probs(), br.payoff);
        },
        py::arg("instance"), py::arg("opponents"), py::arg("engine_index"), py::arg("seed") = 42);
    m.def(
        "verify_epsilon_nash",
        [](const std::vector<std::vector<double>>& profile, const Instance& inst, double epsilon,
           std::uint64_t seed) {
            return equilibrium_report_dict(
                verify_epsilon_nash(profile_from_lists(profile), inst, epsilon, seed));
        },
        py::arg("profile"), py::arg("instance"), py::arg("epsilon") = 1e-6, py::arg("seed") = 42);
    m.def(
        "symmetric_equilibrium",
        [](const TypeDistribution& dist, double beta, int engines) {
            const auto [state, cert] = symmetric_equilibrium_proportional(dist, beta, engines);
            py::dict d;
            d["z"] = state.z;
            d["lambda_prime"] = state.lambda_prime;
            d["strategy"] = state.page_probs.probs();
            d["beta_threshold"] = cert.beta_threshold;
            d["globally_concave"] = cert.globally_concave;
            d["negative_at_symmetric_point"] = cert.negative_at_symmetric_point;
            d["hessian_diagonal"] = cert.diagonal;
            return d;
        },
        py::arg("dist"), py::arg("beta"), py::arg("engines"),
        "Symmetric proportional-rule equilibrium candidate with its concavity certificate");
    m.def(
        "brute_force_equilibria",
        [](const Instance& inst, int grid_m, double epsilon, std::uint64_t seed) {
            py::list out;
            for (const auto& [profile, report] : brute_force_equilibria(inst, grid_m, epsilon, seed)) {
                py::list strategies;
                for (const auto& s : profile) strategies.append(s.probs());
                py::dict d;
                d["profile"] = std::move(strategies);
                d["report"] = equilibrium_report_dict(report);
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("instance"), py::arg("grid_m") = 12, py::arg("epsilon") = 1e-6,
        py::arg("seed") = 42);
    m.def(
        "find_improving_deviation",
        [](const std::vector<std::vector<double>>& profile, const Instance& inst,
           double min_gain) -> py::object {
            const auto dev = find_improving_deviation(profile_from_lists(profile), inst, min_gain);
            if (!dev) return py::none();
            py::dict d;
            d["engine"] = dev->engine;
            d["strategy"] = dev->strategy->probs();
            d["payoff"] = dev->payoff;
            d["gain"] = dev->gain;
            return std::move(d);
        },
        py::arg("profile"), py::arg("instance"), py::arg("min_gain") = 1e-9);

    m.def(
        "social_optimum",
        [](const Instance& inst, const std::string& mode) {
            const OptMode m = mode == "exhaustive" ? OptMode::Exhaustive
                              : mode == "greedy"   ? OptMode::Greedy
                                                   : OptMode::TopK;
            const auto opt = social_optimum(inst.dist, inst.config, m);
            py::dict d;
            d["welfare"] = opt.welfare;
            d["approximate"] = opt.approximate;
            py::list chains;
            for (const auto& s : opt.profile) chains.append(s.atoms().front().slots);
            d["profile"] = std::move(chains);
            return d;
        },
        py::arg("instance"), py::arg("mode") = "top_k");
    m.def(
        "price_of_anarchy",
        [](const Instance& inst, const std::vector<std::vector<std::vector<double>>>& equilibria,
           const std::string& mode) {
            const OptMode m = mode == "exhaustive" ? OptMode::Exhaustive
                              : mode == "greedy"   ? OptMode::Greedy
                                                   : OptMode::TopK;
            std::vector<SingletonProfile> profiles;
            for (const auto& p : equilibria) profiles.push_back(profile_from_lists(p));
            const auto opt = social_optimum(inst.dist, inst.config, m);
            const auto report = poa_report(inst, profiles, opt);
            py::dict d;
            d["status"] = report.status;
            d["opt_welfare"] = report.opt_welfare;
            d["equilibrium_welfares"] = report.equilibrium_welfares;
            d["poa"] = report.poa ? py::cast(*report.poa) : py::none();
            d["pos"] = report.pos ? py::cast(*report.pos) : py::none();
            return d;
        },
        py::arg("instance"), py::arg("equilibria"), py::arg("mode") = "top_k");

    m.def(
        "generate_scenario",
        [](const std::string& name, py::kwargs kwargs) {
            ScenarioParams params;
            if (kwargs.contains("engines")) params.engines = kwargs["engines"].cast<int>();
            if (kwargs.contains("pages")) params.pages = kwargs["pages"].cast<int>();
            if (kwargs.contains("beta")) params.beta = kwargs["beta"].cast<double>();
            if (kwargs.contains("seed")) params.seed = kwargs["seed"].cast<std::uint64_t>();
            if (kwargs.contains("scale")) params.perturb_scale = kwargs["scale"].cast<double>();
            const Scenario scen = generate_scenario(name, params);
            py::dict d;
            d["name"] = scen.name;
            d["description"] = scen.description;
            d["instance"] = scen.instance;
            py::list profiles;
            for (const auto& profile : scen.profiles) {
                py::list strategies;
                for (const auto& s : profile) strategies.append(s.probs());
                profiles.append(std::move(strategies));
            }
            d["profiles"] = std::move(profiles);
            py::dict expected;
            auto put = [&](const char* key, const std::optional<double>& v) {
                if (v) expected[key] = *v;
            };
            put("opt_welfare", scen.expected.opt_welfare);
            put("equilibrium_welfare", scen.expected.equilibrium_welfare);
            put("poa", scen.expected.poa);
            put("pos", scen.expected.pos);
            put("equilibrium_epsilon", scen.expected.equilibrium_epsilon);
            if (scen.expected.has_pure_equilibrium)
                expected["has_pure_equilibrium"] = *scen.expected.has_pure_equilibrium;
            d["expected"] = std::move(expected);
            return d;
        },
        py::arg("name"), "Generate a named instance family; see scenario_catalog()");
    m.def("scenario_catalog", [] {
        py::list out;
        for (const auto& info : scenario_catalog()) {
            py::dict d;
            d["name"] = info.name;
            d["description"] = info.description;
            d["defaults"] = info.defaults;
            out.append(std::move(d));
        }
        return out;
    });

    m.attr("__version__") = "0.1.0";
}
