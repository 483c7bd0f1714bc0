#include "urysohn/report_io.hpp"

#include <fmt/format.h>

#include "urysohn/errors.hpp"

namespace urysohn {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json domain_json(const DomainSpec& d) {
    const std::size_t k = d.dimension();
    json lo = json::array(), hi = json::array();
    for (std::size_t a = 0; a < k; ++a) {
        lo.push_back(d.lower[a]);
        hi.push_back(d.upper[a]);
    }
    return {{"kind", d.kind == DomainKind::interval ? "interval" : "rectangle"},
            {"lower", lo},
            {"upper", hi}};
}

json stats_json(const SolveStats& s) {
    return {{"iterations", s.iterations},
            {"residual", s.residual},
            {"converged", s.converged},
            {"contraction", s.contraction}};
}

json config_echo(const RunConfig& cfg) {
    const ProblemSpec& pr = cfg.problem;
    return {{"family", pr.family->name()},
            {"params", cfg.params},
            {"lambda", pr.lambda},
            {"q", pr.q},
            {"p", pr.p},
            {"r", pr.r},
            {"domain", domain_json(pr.domain)},
            {"cells_per_axis", cfg.cells_per_axis},
            {"seed", cfg.seed},
            {"mask_strategy", to_string(cfg.experiment.mask)},
            {"n_samples", cfg.experiment.n_samples}};
}

std::string csv_row(double eps, double r0, double delta, double distance, bool pass) {
    return fmt::format("{},{},{},{},{}\n", eps, r0, delta, distance, pass ? "true" : "false");
}

}  // namespace

json constants_json(const Constants& c) {
    return {{"kappa0", c.kappa0},
            {"kappa1", c.kappa1},
            {"kappa2", c.kappa2},
            {"alpha0", c.alpha0},
            {"alpha1", c.alpha1},
            {"alpha2", c.alpha2},
            {"L_star", c.l_star},
            {"T_star", c.t_star},
            {"beta_star", optional_number(c.beta_star)},
            {"c_star", optional_number(c.c_star)},
            {"condition_2d_satisfied", c.condition_2d_satisfied},
            {"margin", 1.0 - c.l_star}};
}

json trajectory_json(const Trajectory& t, const Constants& c, double p) {
    const Grid& grid = *t.values.grid();
    json nodes = json::array(), values = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point& x = grid.node(i);
        nodes.push_back(grid.dimension() == 1 ? json::array({x[0]}) : json::array({x[0], x[1]}));
        const auto v = t.values.at(i);
        values.push_back(json(std::vector<double>(v.begin(), v.end())));
    }
    return {{"nodes", nodes},
            {"values", values},
            {"iterations", t.iterations},
            {"residual", t.residual},
            {"converged", t.converged},
            {"p_norm", lp_norm(t.values, p)},
            {"beta_star", optional_number(c.beta_star)}};
}

json robustness_json(const RunConfig& cfg, const std::vector<RobustnessReport>& rows) {
    json out = json::array();
    bool all = true;
    for (const auto& r : rows) {
        all = all && r.bound_satisfied;
        out.push_back({{"epsilon", r.epsilon},
                       {"r0", r.r0},
                       {"delta_used", r.delta_used},
                       {"mask_measure", r.mask_measure},
                       {"v_norm", r.v_norm},
                       {"distance", r.distance},
                       {"pass", r.bound_satisfied},
                       {"unconstrained", r.unconstrained},
                       {"x_solve", stats_json(r.x_stats)},
                       {"z_solve", stats_json(r.z_stats)}});
    }
    return {{"config", config_echo(cfg)}, {"rows", out}, {"all_pass", all}};
}

std::string robustness_csv(const std::vector<RobustnessReport>& rows) {
    std::string s = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows) s += csv_row(r.epsilon, r.r0, r.delta_used, r.distance, r.bound_satisfied);
    return s;
}

json density_json(const RunConfig& cfg, const std::vector<DensityReport>& reports) {
    json out = json::array();
    bool all = true;
    for (const auto& rep : reports) {
        json rows = json::array();
        for (const auto& r : rep.rows) {
            all = all && r.pass;
            rows.push_back({{"epsilon", r.epsilon},
                            {"delta_star", r.delta_star},
                            {"mask_measure", r.mask_measure},
                            {"distance", r.distance},
                            {"full_norm", r.full_norm},
                            {"pass", r.pass},
                            {"solve", stats_json(r.stats)}});
        }
        out.push_back({{"r0", rep.r0}, {"base_solve", stats_json(rep.base_stats)}, {"rows", rows}});
    }
    return {{"config", config_echo(cfg)}, {"runs", out}, {"all_pass", all}};
}

std::string density_csv(const std::vector<DensityReport>& reports) {
    std::string s = std::string(kCsvHeader) + "\n";
    for (const auto& rep : reports)
        for (const auto& r : rep.rows) s += csv_row(r.epsilon, rep.r0, r.delta_star, r.distance, r.pass);
    return s;
}

json control_file_json(const Control& u) {
    const GridFunction& v = u.values();
    json values = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto vi = v.at(i);
        values.push_back(json(std::vector<double>(vi.begin(), vi.end())));
    }
    return {{"grid", {{"cells_per_axis", v.grid()->cells_per_axis()},
                      {"domain", domain_json(v.grid()->domain())}}},
            {"values", values}};
}

Control read_control_file(const json& doc, const DiscreteSystem& sys) {
    const Grid& grid = *sys.grid();
    const std::size_t m = sys.problem().m;
    if (!doc.is_object() || !doc.contains("grid") || !doc.contains("values"))
        throw ConfigError("control file: expected {\"grid\": ..., \"values\": ...}");
    const json& g = doc["grid"];
    if (!g.is_object() || !g.contains("cells_per_axis") || !g.contains("domain"))
        throw ConfigError("control file: grid fingerprint needs cells_per_axis and domain");
    if (g["cells_per_axis"] != json(grid.cells_per_axis()) || g["domain"] != domain_json(grid.domain()))
        throw ConfigError("control file: grid fingerprint does not match the configured grid");
    const json& vals = doc["values"];
    if (!vals.is_array() || vals.size() != grid.size())
        throw ConfigError("control file: expected " + std::to_string(grid.size()) + " node values");
    std::vector<double> flat;
    flat.reserve(grid.size() * m);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const json& row = vals[i];
        if (!row.is_array() || row.size() != m)
            throw ConfigError("control file: values[" + std::to_string(i) + "] must have " +
                              std::to_string(m) + " entries");
        for (const json& c : row) {
            if (!c.is_number()) throw ConfigError("control file: values must be numbers");
            flat.push_back(c.get<double>());
        }
    }
    try {
        return Control(GridFunction(sys.grid(), m, std::move(flat)), sys.problem().q);
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("control file: ") + e.what());
    }
}

}  // namespace urysohn
