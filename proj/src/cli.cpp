#include "urysohn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "urysohn/config.hpp"
#include "urysohn/errors.hpp"
#include "urysohn/report_io.hpp"
#include "urysohn/seed.hpp"

namespace urysohn {
namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(path.string() + ": cannot open for writing");
    f << text;
}

std::filesystem::path out_dir(const CliArgs& args) {
    std::filesystem::path dir = args.out_dir.value_or(".");
    std::filesystem::create_directories(dir);
    return dir;
}

int cmd_check(const RunConfig& cfg, const CliArgs&, std::ostream& out) {
    const GridPtr grid = build_grid(cfg.problem.domain, cfg.cells_per_axis);
    const Constants c = compute_constants(cfg.problem, *grid);
    out << constants_json(c).dump(2) << "\n";
    return check_small_gain(c).satisfied ? kExitOk : kExitTheory;
}

int cmd_solve(const RunConfig& cfg, const CliArgs& args, std::ostream& out) {
    const DiscreteSystem sys(cfg.problem, build_grid(cfg.problem.domain, cfg.cells_per_axis));
    std::optional<Control> u;
    if (args.control_file) {
        std::ifstream in(*args.control_file);
        if (!in) throw ConfigError(args.control_file->string() + ": cannot open control file");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("control file: malformed JSON: ") + e.what());
        }
        u = read_control_file(doc, sys);
    } else {
        u = random_admissible(sys, cfg.seed, args.control_norm.value_or(cfg.problem.r));
    }
    const Trajectory t = solve_trajectory(sys, u->values(), cfg.solver);
    const std::string text = trajectory_json(t, sys.constants(), cfg.problem.p).dump(2) + "\n";
    if (args.out_dir)
        write_file(out_dir(args) / "trajectory.json", text);
    else
        out << text;
    return t.converged ? kExitOk : kExitNonConvergence;
}

int emit(const CliArgs& args, const std::string& name, const json& report, const std::string& csv,
         std::ostream& out) {
    const auto dir = out_dir(args);
    write_file(dir / (name + ".json"), report.dump(2) + "\n");
    write_file(dir / (name + ".csv"), csv);
    const bool all = report.at("all_pass").get<bool>();
    out << name << ": " << (all ? "all rows pass" : "some rows FAIL") << " -> "
        << (dir / (name + ".csv")).string() << "\n";
    return all ? kExitOk : kExitTheory;
}

int cmd_sweep(const RunConfig& cfg, const CliArgs& args, std::ostream& out, std::size_t repeats,
              const std::string& name) {
    const DiscreteSystem sys(cfg.problem, build_grid(cfg.problem.domain, cfg.cells_per_axis));
    const auto rows = sweep(sys, cfg.epsilons, cfg.r0_list, repeats, cfg.seed, cfg.experiment);
    return emit(args, name, robustness_json(cfg, rows), robustness_csv(rows), out);
}

int cmd_density(const RunConfig& cfg, const CliArgs& args, std::ostream& out) {
    const DiscreteSystem sys(cfg.problem, build_grid(cfg.problem.domain, cfg.cells_per_axis));
    std::vector<double> schedule = cfg.epsilons;
    std::sort(schedule.begin(), schedule.end(), std::greater<>());
    schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

    std::vector<DensityReport> reports;
    for (std::size_t k = 0; k < cfg.r0_list.size(); ++k) {
        const std::uint64_t run_seed = derive_seed(cfg.seed, k);
        const Control u = random_admissible(sys, derive_seed(run_seed, 0), cfg.r0_list[k]);
        reports.push_back(run_density(sys, u, schedule, cfg.experiment, run_seed));
    }
    json report = density_json(cfg, reports);

    // Sampled Hausdorff distance between X_{p,r} and its full-resource completions.
    if (cfg.experiment.n_samples > 0 && !schedule.empty()) {
        const double eps = schedule.back();
        const std::uint64_t s = derive_seed(cfg.seed, kEstimatorStream);
        const auto sample = sample_trajectories(sys, cfg.experiment.n_samples, s, false, cfg.solver);
        const auto done = complete_sample(sys, sample, eps, cfg.experiment, s);
        const double h = directed_hausdorff(sample.trajectories, done.trajectories, cfg.problem.p);
        report["hausdorff"] = {{"epsilon", eps},
                               {"n", cfg.experiment.n_samples},
                               {"directed_distance", h},
                               {"pass", h <= eps}};
        report["all_pass"] = report["all_pass"].get<bool>() && h <= eps;
    }
    return emit(args, "density", report, density_csv(reports), out);
}

}  // namespace

int run_cli(const CliArgs& args, std::ostream& out, std::ostream& err) {
    try {
        RunConfig cfg = load_config(args.config);
        if (args.seed) cfg.seed = *args.seed;
        if (args.command == "check") return cmd_check(cfg, args, out);
        if (args.command == "solve") return cmd_solve(cfg, args, out);
        if (args.command == "robustness") return cmd_sweep(cfg, args, out, 1, "robustness");
        if (args.command == "sweep") return cmd_sweep(cfg, args, out, cfg.n_repeats, "sweep");
        if (args.command == "density") return cmd_density(cfg, args, out);
        err << "unknown command '" << args.command << "'\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const TheoryViolation& e) {
        err << "theory violation: " << e.what() << "\n";
        return kExitTheory;
    } catch (const NonConvergence& e) {
        err << "no convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const GridTooCoarse& e) {
        err << "grid too coarse: " << e.what() << "\n";
        return kExitResolution;
    } catch (const PreconditionError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace urysohn
