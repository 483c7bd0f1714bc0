#include "urysohn/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "urysohn/errors.hpp"

namespace urysohn {
namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
}

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key))
            throw ConfigError((path.empty() ? key : path + "." + key) + ": unknown key");
}

const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing required field");
    return j.at(key);
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path + ": must be finite");
    return v;
}

std::uint64_t count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ConfigError(path + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(number(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

DomainSpec parse_domain(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"kind", "lower", "upper"});
    const json& kind = field(j, path, "kind");
    if (!kind.is_string()) throw ConfigError(path + ".kind: expected a string");
    const auto lo = numbers(field(j, path, "lower"), path + ".lower");
    const auto hi = numbers(field(j, path, "upper"), path + ".upper");
    try {
        if (kind == "interval") {
            if (lo.size() != 1 || hi.size() != 1)
                throw ConfigError(path + ": interval bounds need one entry each");
            return DomainSpec::interval(lo[0], hi[0]);
        }
        if (kind == "rectangle") {
            if (lo.size() != 2 || hi.size() != 2)
                throw ConfigError(path + ": rectangle bounds need two entries each");
            return DomainSpec::rectangle(lo[0], hi[0], lo[1], hi[1]);
        }
    } catch (const PreconditionError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ".kind: expected \"interval\" or \"rectangle\"");
}

void parse_problem(const json& j, RunConfig& cfg) {
    const std::string path = "problem";
    require_object(j, path);
    reject_unknown(j, path, {"family", "params", "lambda", "q", "r", "domain", "dims"});
    const json& fam = field(j, path, "family");
    if (!fam.is_string()) throw ConfigError("problem.family: expected a string");
    const double lambda = number(field(j, path, "lambda"), "problem.lambda");
    const double q = number(field(j, path, "q"), "problem.q");
    const double r = number(field(j, path, "r"), "problem.r");
    if (j.contains("params")) {
        require_object(j["params"], "problem.params");
        for (const auto& [key, value] : j["params"].items())
            cfg.params[key] = number(value, "problem.params." + key);
    }
    std::optional<DomainSpec> domain;
    if (j.contains("domain")) domain = parse_domain(j["domain"], "problem.domain");

    FamilyPtr family;
    try {
        family = make_family(fam.get<std::string>(), cfg.params);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("problem: ") + e.what());
    }
    try {
        cfg.problem = ProblemSpec::make(family, lambda, q, r, domain);
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("problem: ") + e.what());
    }
    if (j.contains("dims")) {
        const json& d = j["dims"];
        require_object(d, "problem.dims");
        reject_unknown(d, "problem.dims", {"n", "m"});
        if (d.contains("n") && count(d["n"], "problem.dims.n") != cfg.problem.n)
            throw ConfigError("problem.dims.n: family '" + fam.get<std::string>() + "' has n = " +
                              std::to_string(cfg.problem.n));
        if (d.contains("m") && count(d["m"], "problem.dims.m") != cfg.problem.m)
            throw ConfigError("problem.dims.m: family '" + fam.get<std::string>() + "' has m = " +
                              std::to_string(cfg.problem.m));
    }
    cfg.params = family->params();
    cfg.cells_per_axis = cfg.problem.domain.dimension() == 1 ? 400 : 20;
}

void parse_grid(const json& j, RunConfig& cfg) {
    require_object(j, "grid");
    reject_unknown(j, "grid", {"cells_per_axis"});
    if (j.contains("cells_per_axis")) {
        cfg.cells_per_axis = count(j["cells_per_axis"], "grid.cells_per_axis");
        if (cfg.cells_per_axis < 1) throw ConfigError("grid.cells_per_axis: must be >= 1");
    }
}

void parse_solver(const json& j, RunConfig& cfg) {
    require_object(j, "solver");
    reject_unknown(j, "solver", {"tol", "max_iter", "allow_unproven"});
    if (j.contains("tol")) {
        cfg.solver.tol = number(j["tol"], "solver.tol");
        if (!(cfg.solver.tol > 0.0)) throw ConfigError("solver.tol: must be > 0");
    }
    if (j.contains("max_iter")) cfg.solver.max_iter = count(j["max_iter"], "solver.max_iter");
    if (j.contains("allow_unproven")) {
        if (!j["allow_unproven"].is_boolean())
            throw ConfigError("solver.allow_unproven: expected a boolean");
        cfg.solver.allow_unproven = j["allow_unproven"].get<bool>();
    }
}

void parse_experiment(const json& j, RunConfig& cfg) {
    const std::string path = "experiment";
    require_object(j, path);
    reject_unknown(j, path, {"epsilons", "r0_list", "n_repeats", "n_samples", "seed",
                             "mask_strategy", "b_star"});
    if (j.contains("epsilons")) {
        cfg.epsilons = numbers(j["epsilons"], "experiment.epsilons");
        for (double e : cfg.epsilons)
            if (!(e > 0.0)) throw ConfigError("experiment.epsilons: entries must be > 0");
    }
    if (j.contains("r0_list")) {
        cfg.r0_list = numbers(j["r0_list"], "experiment.r0_list");
        for (double r0 : cfg.r0_list)
            if (!(r0 >= 0.0 && r0 < cfg.problem.r))
                throw ConfigError("experiment.r0_list: entries must lie in [0, r)");
    }
    if (j.contains("n_repeats")) cfg.n_repeats = count(j["n_repeats"], "experiment.n_repeats");
    if (j.contains("n_samples"))
        cfg.experiment.n_samples = count(j["n_samples"], "experiment.n_samples");
    if (j.contains("seed")) cfg.seed = count(j["seed"], "experiment.seed");
    if (j.contains("mask_strategy")) {
        if (!j["mask_strategy"].is_string())
            throw ConfigError("experiment.mask_strategy: expected a string");
        try {
            cfg.experiment.mask = parse_mask_strategy(j["mask_strategy"].get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("experiment.mask_strategy: ") + e.what());
        }
    }
    if (j.contains("b_star")) {
        auto b = numbers(j["b_star"], "experiment.b_star");
        if (b.size() != cfg.problem.m)
            throw ConfigError("experiment.b_star: expected " + std::to_string(cfg.problem.m) +
                              " entries");
        if (std::abs(euclidean(b) - 1.0) > 1e-12)
            throw ConfigError("experiment.b_star: must have unit Euclidean norm");
        cfg.experiment.b_star = std::move(b);
    }
}

}  // namespace

RunConfig parse_config(const json& doc) {
    require_object(doc, "<root>");
    reject_unknown(doc, "", {"problem", "grid", "solver", "experiment"});
    RunConfig cfg;
    if (!doc.contains("problem")) throw ConfigError("problem: missing required block");
    parse_problem(doc["problem"], cfg);
    if (doc.contains("grid")) parse_grid(doc["grid"], cfg);
    if (doc.contains("solver")) parse_solver(doc["solver"], cfg);
    if (doc.contains("experiment")) parse_experiment(doc["experiment"], cfg);
    cfg.experiment.solver = cfg.solver;
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace urysohn
