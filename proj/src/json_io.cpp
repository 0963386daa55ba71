#include "searchgame/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace searchgame {

namespace {

json real_out(double x) { return json(format_real(x)); }

double real_in(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw ValidationError(std::string(what) + ": cannot parse '" + s + "' as a real");
        return v;
    }
    throw ValidationError(std::string(what) + ": expected a number or a decimal string");
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (double x : row) r.push_back(x);
        rows.push_back(std::move(r));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of rows");
    Matrix m;
    for (const auto& row : j) {
        std::vector<double> r;
        for (const auto& x : row) r.push_back(real_in(x, what));
        m.push_back(std::move(r));
    }
    return m;
}

} // namespace

json instance_to_json(const Instance& instance) {
    json j;
    j["beta"] = instance.config.beta;
    j["engines"] = instance.config.num_engines;
    j["pages"] = instance.config.num_pages;
    j["max_threshold"] = instance.config.max_threshold;
    json types = json::array();
    for (const auto& entry : instance.dist.entries()) {
        json t;
        t["pages"] = entry.type.pages;
        t["threshold"] = entry.type.threshold;
        t["prob"] = real_out(entry.prob);
        types.push_back(std::move(t));
    }
    j["types"] = std::move(types);

    json rule;
    rule["name"] = instance.rule.name();
    json params = json::object();
    switch (instance.rule.kind()) {
    case RuleKind::WeightedProportional:
        params["weights"] = instance.rule.weights();
        break;
    case RuleKind::TruncatedIndifferent:
        params["pages"] = instance.rule.pages();
        break;
    case RuleKind::InducedMarkov:
        params["success"] = matrix_to_json(instance.rule.markov_model()->success());
        params["failure"] = matrix_to_json(instance.rule.markov_model()->failure());
        break;
    default:
        break;
    }
    rule["params"] = std::move(params);
    j["rule"] = std::move(rule);
    return j;
}

namespace {

SelectionRule rule_from_json(const json& j, int engines) {
    if (!j.contains("name")) throw ValidationError("rule: missing 'name'");
    const std::string name = j.at("name").get<std::string>();
    const json params = j.value("params", json::object());
    if (name == "proportional") return SelectionRule::proportional(engines);
    if (name == "markovian") return SelectionRule::markovian_basic(engines);
    if (name == "majority") return SelectionRule::majority(engines);
    if (name == "weighted_proportional") {
        if (!params.contains("weights"))
            throw ValidationError("weighted_proportional: missing 'weights'");
        std::vector<double> w;
        for (const auto& x : params.at("weights")) w.push_back(real_in(x, "weights"));
        if (static_cast<int>(w.size()) != engines)
            throw ValidationError("weighted_proportional: weights size must equal engines");
        return SelectionRule::weighted_proportional(std::move(w));
    }
    if (name == "gamma_power") {
        if (engines != 3) throw ValidationError("gamma_power needs exactly 3 engines");
        return SelectionRule::gamma_power();
    }
    if (name == "truncated_indifferent") {
        if (!params.contains("pages"))
            throw ValidationError("truncated_indifferent: missing 'pages'");
        const int pages = params.at("pages").get<int>();
        if (engines != pages + 1)
            throw ValidationError("truncated_indifferent needs engines = pages + 1");
        return SelectionRule::truncated_indifferent(pages);
    }
    if (name == "induced_markov") {
        if (!params.contains("success") || !params.contains("failure"))
            throw ValidationError("induced_markov: missing 'success'/'failure' matrices");
        MarkovUserModel model(matrix_from_json(params.at("success"), "success"),
                              matrix_from_json(params.at("failure"), "failure"));
        if (model.engine_count() != engines)
            throw ValidationError("induced_markov: matrix size must equal engines");
        return SelectionRule::induced_markov(std::move(model));
    }
    throw ValidationError("unknown rule '" + name + "'");
}

} // namespace

Instance instance_from_json(const json& j) {
    for (const char* key : {"beta", "engines", "pages", "max_threshold", "types", "rule"})
        if (!j.contains(key))
            throw ValidationError(std::string("instance: missing '") + key + "'");
    GameConfig config;
    config.beta = real_in(j.at("beta"), "beta");
    config.num_engines = j.at("engines").get<int>();
    config.num_pages = j.at("pages").get<int>();
    config.max_threshold = j.at("max_threshold").get<int>();
    config.validate();

    std::vector<TypeEntry> entries;
    for (const auto& t : j.at("types")) {
        TypeEntry entry;
        entry.type.pages = t.at("pages").get<std::vector<int>>();
        std::sort(entry.type.pages.begin(), entry.type.pages.end());
        entry.type.threshold = t.value("threshold", 1);
        entry.prob = real_in(t.at("prob"), "prob");
        entries.push_back(std::move(entry));
    }
    TypeDistribution dist(std::move(entries), config.num_pages);

    Instance instance{config, std::move(dist), rule_from_json(j.at("rule"), config.num_engines)};
    instance.validate();
    return instance;
}

json profile_to_json(const SingletonProfile& profile) {
    json strategies = json::array();
    for (const auto& s : profile) {
        json probs = json::array();
        for (double p : s.probs()) probs.push_back(real_out(p));
        strategies.push_back(json{{"probs", std::move(probs)}});
    }
    return json{{"strategies", std::move(strategies)}};
}

json profile_to_json(const ChainProfile& profile) {
    json strategies = json::array();
    for (const auto& s : profile) {
        json atoms = json::array();
        for (const auto& atom : s.atoms())
            atoms.push_back(json{{"pages", atom.slots}, {"weight", real_out(atom.weight)}});
        strategies.push_back(json{{"atoms", std::move(atoms)}});
    }
    return json{{"strategies", std::move(strategies)}};
}

std::variant<SingletonProfile, ChainProfile> profile_from_json(const json& j,
                                                               const GameConfig& config) {
    if (!j.contains("strategies") || !j.at("strategies").is_array() ||
        j.at("strategies").empty())
        throw ValidationError("profile: missing 'strategies'");
    const json& strategies = j.at("strategies");
    if (strategies.front().contains("probs")) {
        SingletonProfile profile;
        for (const auto& s : strategies) {
            std::vector<double> probs;
            for (const auto& p : s.at("probs")) probs.push_back(real_in(p, "probs"));
            if (static_cast<int>(probs.size()) != config.num_pages)
                throw ValidationError("strategy length must equal the page count");
            profile.emplace_back(std::move(probs));
        }
        return profile;
    }
    ChainProfile profile;
    for (const auto& s : strategies) {
        std::vector<ChainAtom> atoms;
        for (const auto& a : s.at("atoms"))
            atoms.push_back(ChainAtom{a.at("pages").get<std::vector<int>>(),
                                      real_in(a.at("weight"), "weight")});
        profile.emplace_back(std::move(atoms), config);
    }
    return profile;
}

json profiles_to_json(const std::vector<SingletonProfile>& profiles) {
    json out = json::array();
    for (const auto& p : profiles) out.push_back(profile_to_json(p));
    return json{{"profiles", std::move(out)}};
}

std::vector<SingletonProfile> singleton_profiles_from_json(const json& j,
                                                           const GameConfig& config) {
    if (!j.contains("profiles")) throw ValidationError("equilibria: missing 'profiles'");
    std::vector<SingletonProfile> out;
    for (const auto& p : j.at("profiles")) {
        auto parsed = profile_from_json(p, config);
        if (!std::holds_alternative<SingletonProfile>(parsed))
            throw ValidationError("expected page-vector strategies in the equilibria file");
        out.push_back(std::get<SingletonProfile>(std::move(parsed)));
    }
    return out;
}

json model_to_json(const MarkovUserModel& model) {
    return json{{"success", matrix_to_json(model.success())},
                {"failure", matrix_to_json(model.failure())}};
}

MarkovUserModel model_from_json(const json& j) {
    if (!j.contains("success") || !j.contains("failure"))
        throw ValidationError("model: missing 'success'/'failure' matrices");
    return MarkovUserModel(matrix_from_json(j.at("success"), "success"),
                           matrix_from_json(j.at("failure"), "failure"));
}

json report_to_json(const EquilibriumReport& report) {
    json witnesses = json::array();
    for (const auto& w : report.witnesses) {
        if (!w) {
            witnesses.push_back(nullptr);
            continue;
        }
        json d;
        d["engine"] = w->engine;
        if (w->strategy) {
            json probs = json::array();
            for (double p : w->strategy->probs()) probs.push_back(real_out(p));
            d["strategy"] = std::move(probs);
        }
        if (w->chain) d["chain"] = *w->chain;
        d["payoff"] = w->payoff;
        d["gain"] = w->gain;
        witnesses.push_back(std::move(d));
    }
    return json{{"epsilon", report.epsilon},
                {"is_equilibrium", report.is_equilibrium},
                {"regrets", report.regrets},
                {"payoffs", report.payoffs},
                {"welfare", report.welfare_value},
                {"witnesses", std::move(witnesses)}};
}

json report_to_json(const PropertyReport& report) {
    json j{{"property", report.property},
           {"passed", report.passed},
           {"strict", report.strict},
           {"points_checked", report.points_checked},
           {"margin", report.margin},
           {"note", report.note}};
    if (report.witness) {
        j["witness"] = json{{"q", report.witness->q},
                            {"engine", report.witness->engine},
                            {"coordinate", report.witness->coordinate},
                            {"lhs", report.witness->lhs},
                            {"rhs", report.witness->rhs},
                            {"detail", report.witness->detail}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json report_to_json(const PoaReport& report) {
    json j{{"status", report.status},
           {"opt_welfare", report.opt_welfare},
           {"equilibrium_welfares", report.equilibrium_welfares}};
    j["poa"] = report.poa ? json(*report.poa) : json(nullptr);
    j["pos"] = report.pos ? json(*report.pos) : json(nullptr);
    return j;
}

json optimum_to_json(const OptimumResult& opt) {
    json chains = json::array();
    for (const auto& s : opt.profile)
        chains.push_back(s.atoms().front().slots);
    const char* method = opt.method == OptMode::Exhaustive ? "exhaustive"
                         : opt.method == OptMode::TopK     ? "top_k"
                                                           : "greedy";
    return json{{"welfare", opt.welfare},
                {"method", method},
                {"approximate", opt.approximate},
                {"profile", std::move(chains)}};
}

json scenario_to_json(const Scenario& scenario) {
    json expected = json::object();
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) expected[key] = *v;
    };
    put("opt_welfare", scenario.expected.opt_welfare);
    put("equilibrium_welfare", scenario.expected.equilibrium_welfare);
    put("poa", scenario.expected.poa);
    put("pos", scenario.expected.pos);
    put("equilibrium_epsilon", scenario.expected.equilibrium_epsilon);
    if (scenario.expected.has_pure_equilibrium)
        expected["has_pure_equilibrium"] = *scenario.expected.has_pure_equilibrium;
    if (!scenario.expected.notes.empty()) expected["notes"] = scenario.expected.notes;

    json profiles = json::array();
    for (const auto& p : scenario.profiles) profiles.push_back(profile_to_json(p));

    return json{{"name", scenario.name},
                {"description", scenario.description},
                {"instance", instance_to_json(scenario.instance)},
                {"profiles", std::move(profiles)},
                {"expected", std::move(expected)}};
}

namespace {

void dump_rec(const json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<size_t>(indent * depth), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + json(it.key()).dump() + ": ";
            dump_rec(it.value(), out, indent, depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& item : j) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            dump_rec(item, out, indent, depth + 1);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case json::value_t::number_float: {
        const double x = j.get<double>();
        out += std::isfinite(x) ? format_real(x) : "null";
        return;
    }
    default:
        out += j.dump();
        return;
    }
}

} // namespace

std::string canonical_dump(const json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace searchgame
