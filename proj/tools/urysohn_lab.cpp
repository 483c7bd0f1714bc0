#include <iostream>

#include <CLI11.hpp>

#include "urysohn/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Urysohn control-system laboratory"};
    app.require_subcommand(1);

    urysohn::CliArgs args;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string control_file;
    double control_norm = 0.0;

    auto add = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("config", args.config, "run configuration (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override experiment.seed");
        return sub;
    };
    add("check", "print constants, exit 2 if the small-gain condition fails");
    CLI::App* solve = add("solve", "solve one trajectory");
    solve->add_option("--control", control_file, "control file (JSON)");
    solve->add_option("--norm", control_norm, "q-norm of the seeded control (default r)");
    add("robustness", "one splice experiment per (epsilon, r0)");
    add("density", "full-resource completion over the epsilon schedule");
    add("sweep", "robustness batch with n_repeats per (epsilon, r0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : urysohn::kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    args.command = sub->get_name();
    if (sub->count("--out")) args.out_dir = out_dir;
    if (sub->count("--seed")) args.seed = seed;
    if (args.command == "solve") {
        if (sub->count("--control")) args.control_file = control_file;
        if (sub->count("--norm")) args.control_norm = control_norm;
    }
    return urysohn::run_cli(args, std::cout, std::cerr);
}
