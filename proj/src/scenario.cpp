#include "trialopt/scenario.hpp"

#include "trialopt/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace trialopt {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    require(j.is_object(), ErrorCode::Validation, where + " must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        require(allowed.count(k) > 0, ErrorCode::Validation, "unknown key '" + k + "' in " + where);
}

double num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    require(j[key].is_number(), ErrorCode::Validation, std::string("'") + key + "' must be a number");
    return j[key].get<double>();
}

double num_required(const json& j, const char* key, const std::string& where) {
    require(j.contains(key), ErrorCode::Validation, std::string("missing '") + key + "' in " + where);
    return num(j, key, 0.0);
}

Family parse_family(const json& j) {
    require(j.is_object() && j.contains("family") && j["family"].is_string(), ErrorCode::Validation,
            "distribution needs a 'family' tag");
    const auto tag = j["family"].get<std::string>();
    if (tag == "uniform") {
        only_keys(j, {"family", "a", "b"}, "distribution");
        return Uniform{num(j, "a", 0.0), num(j, "b", 1.0)};
    }
    if (tag == "iso_elastic") {
        only_keys(j, {"family", "kappa", "eps", "v0"}, "distribution");
        return PiecewiseIsoElastic{num_required(j, "kappa", "distribution"), num_required(j, "eps", "distribution"),
                                   num(j, "v0", 0.2)};
    }
    if (tag == "truncated_weibull") {
        only_keys(j, {"family", "k", "s"}, "distribution");
        return TruncatedWeibull{num_required(j, "k", "distribution"), num_required(j, "s", "distribution")};
    }
    fail(ErrorCode::Validation, "unknown distribution family '" + tag + "'");
}

json emit_family(const Family& f) {
    return std::visit(
        [](const auto& d) -> json {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, Uniform>) return {{"family", "uniform"}, {"a", d.a}, {"b", d.b}};
            else if constexpr (std::is_same_v<D, PiecewiseIsoElastic>)
                return {{"family", "iso_elastic"}, {"kappa", d.kappa}, {"eps", d.eps}, {"v0", d.v0}};
            else return {{"family", "truncated_weibull"}, {"k", d.k}, {"s", d.s}};
        },
        f);
}

Scenario from_json(const json& j) {
    only_keys(j,
              {"name", "distribution", "attention", "price_window", "solver", "signup", "mixture", "shock", "sweep",
               "contract"},
              "scenario");
    Scenario s;
    require(j.contains("name") && j["name"].is_string(), ErrorCode::Validation, "scenario needs a string 'name'");
    s.name = j["name"].get<std::string>();
    require(j.contains("distribution"), ErrorCode::Validation, "scenario needs a 'distribution'");
    s.distribution = parse_family(j["distribution"]);

    require(j.contains("attention"), ErrorCode::Validation, "scenario needs 'attention'");
    const auto& a = j["attention"];
    only_keys(a, {"lambda0", "beta", "gamma"}, "attention");
    s.attention = {num_required(a, "lambda0", "attention"), num(a, "beta", 0.0), num(a, "gamma", 1.0)};

    if (j.contains("price_window")) {
        const auto& w = j["price_window"];
        only_keys(w, {"p_lo", "p_hi"}, "price_window");
        s.solver.price_window = {num(w, "p_lo", 0.05), num(w, "p_hi", 0.95)};
    }
    if (j.contains("solver")) {
        const auto& c = j["solver"];
        only_keys(c, {"t_max", "bracket_grid", "root_tol", "opt_tol", "max_iter", "participation_mode"}, "solver");
        s.solver.t_max = num(c, "t_max", s.solver.t_max);
        const double grid = num(c, "bracket_grid", static_cast<double>(s.solver.bracket_grid));
        require(grid >= 1.0 && grid == static_cast<double>(static_cast<std::size_t>(grid)), ErrorCode::Validation,
                "bracket_grid must be a positive integer");
        s.solver.bracket_grid = static_cast<std::size_t>(grid);
        s.solver.root_tol = num(c, "root_tol", s.solver.root_tol);
        s.solver.opt_tol = num(c, "opt_tol", s.solver.opt_tol);
        s.solver.max_iter = static_cast<int>(num(c, "max_iter", s.solver.max_iter));
        if (c.contains("participation_mode")) {
            require(c["participation_mode"].is_string(), ErrorCode::Validation, "participation_mode must be a string");
            s.solver.participation_mode = participation_mode_from_string(c["participation_mode"].get<std::string>());
        }
    }
    if (j.contains("signup")) {
        const auto& g = j["signup"];
        only_keys(g, {"alpha", "theta", "cap"}, "signup");
        s.signup = SignupModel{num_required(g, "alpha", "signup"), num_required(g, "theta", "signup"),
                               num(g, "cap", 1.0)};
    }
    if (j.contains("mixture")) {
        const auto& m = j["mixture"];
        only_keys(m, {"atoms"}, "mixture");
        require(m.contains("atoms") && m["atoms"].is_array(), ErrorCode::Validation, "mixture needs an 'atoms' array");
        AttentionMixture mix;
        for (const auto& atom : m["atoms"]) {
            only_keys(atom, {"lambda", "weight"}, "mixture atom");
            mix.atoms.push_back({num_required(atom, "lambda", "mixture atom"), num_required(atom, "weight", "mixture atom")});
        }
        s.mixture = mix;
    }
    if (j.contains("shock")) {
        const auto& k = j["shock"];
        only_keys(k, {"gamma", "label"}, "shock");
        PolicyShock shock{num_required(k, "gamma", "shock"), "shock"};
        if (k.contains("label")) {
            require(k["label"].is_string(), ErrorCode::Validation, "shock label must be a string");
            shock.label = k["label"].get<std::string>();
        }
        s.shock = shock;
    }
    if (j.contains("sweep")) {
        const auto& w = j["sweep"];
        only_keys(w, {"parameter", "grid"}, "sweep");
        require(w.contains("parameter") && w["parameter"].is_string(), ErrorCode::Validation,
                "sweep needs a 'parameter' name");
        require(w.contains("grid") && w["grid"].is_array(), ErrorCode::Validation, "sweep needs a 'grid' array");
        SweepSpec sw{w["parameter"].get<std::string>(), {}};
        for (const auto& x : w["grid"]) {
            require(x.is_number(), ErrorCode::Validation, "sweep grid entries must be numbers");
            sw.grid.push_back(x.get<double>());
        }
        s.sweep = sw;
    }
    if (j.contains("contract")) {
        const auto& c = j["contract"];
        only_keys(c, {"T", "P", "P0"}, "contract");
        s.contract = Contract{num(c, "T", 0.0), num_required(c, "P", "contract"), num(c, "P0", 0.0)};
    }
    s.validate();
    return s;
}

} // namespace

void Scenario::validate() const {
    require(!name.empty(), ErrorCode::Validation, "scenario name must be nonempty");
    (void)dist();
    attention.validate();
    solver.validate();
    if (signup) signup->validate();
    if (mixture) mixture->validate();
    if (shock) shock->validate();
    if (contract) contract->validate();
    if (sweep) {
        static const std::set<std::string> names{"T", "P", "beta", "lambda0", "gamma"};
        require(names.count(sweep->parameter) > 0, ErrorCode::Validation,
                "unknown sweep parameter '" + sweep->parameter + "'");
        require(!sweep->grid.empty(), ErrorCode::Validation, "sweep grid must be nonempty");
        require(std::adjacent_find(sweep->grid.begin(), sweep->grid.end(), std::greater_equal<>()) ==
                    sweep->grid.end(),
                ErrorCode::Validation, "sweep grid must be strictly increasing");
    }
}

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorCode::Validation, std::string("scenario is not valid JSON: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        fail(ErrorCode::Validation, std::string("bad scenario field: ") + e.what());
    }
}

std::string emit_scenario(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["distribution"] = emit_family(s.distribution);
    j["attention"] = {{"lambda0", s.attention.lambda0}, {"beta", s.attention.beta}, {"gamma", s.attention.gamma}};
    j["price_window"] = {{"p_lo", s.solver.price_window.p_lo}, {"p_hi", s.solver.price_window.p_hi}};
    j["solver"] = {{"t_max", s.solver.t_max},
                   {"bracket_grid", s.solver.bracket_grid},
                   {"root_tol", s.solver.root_tol},
                   {"opt_tol", s.solver.opt_tol},
                   {"max_iter", s.solver.max_iter},
                   {"participation_mode", to_string(s.solver.participation_mode)}};
    if (s.signup) j["signup"] = {{"alpha", s.signup->alpha}, {"theta", s.signup->theta}, {"cap", s.signup->cap}};
    if (s.mixture) {
        json atoms = json::array();
        for (const auto& a : s.mixture->atoms) atoms.push_back({{"lambda", a.lambda}, {"weight", a.weight}});
        j["mixture"] = {{"atoms", atoms}};
    }
    if (s.shock) j["shock"] = {{"gamma", s.shock->gamma}, {"label", s.shock->label}};
    if (s.sweep) j["sweep"] = {{"parameter", s.sweep->parameter}, {"grid", s.sweep->grid}};
    if (s.contract) j["contract"] = {{"T", s.contract->T}, {"P", s.contract->P}, {"P0", s.contract->P0}};
    return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Validation, "cannot open scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace trialopt
