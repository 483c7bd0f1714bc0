#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "urysohn/experiments.hpp"
#include "urysohn/problem.hpp"
#include "urysohn/solver.hpp"

namespace urysohn {

/// Parsed run configuration.
///
///   {
///     "problem":    {"family", "lambda", "q", "r", "params"?, "domain"?, "dims"?},
///     "grid":       {"cells_per_axis"?},
///     "solver":     {"tol"?, "max_iter"?, "allow_unproven"?},
///     "experiment": {"epsilons"?, "r0_list"?, "n_repeats"?, "n_samples"?, "seed"?,
///                    "mask_strategy"?, "b_star"?}
///   }
///
/// Only "problem" with family, lambda, q and r is required. Unknown keys are errors.
/// Defaults: domain and params from the family; cells_per_axis 400 on intervals and
/// 20 on rectangles; tol 1e-10, max_iter 10000, allow_unproven false; epsilons
/// [0.2, 0.1], r0_list [0.3, 0.6], n_repeats 5, n_samples 16, seed 1,
/// mask_strategy "prefix", b_star = first unit vector.
struct RunConfig {
    ProblemSpec problem;
    std::map<std::string, double> params;
    std::size_t cells_per_axis = 400;
    SolverOptions solver;
    std::vector<double> epsilons{0.2, 0.1};
    std::vector<double> r0_list{0.3, 0.6};
    std::size_t n_repeats = 5;
    std::uint64_t seed = 1;
    ExperimentOptions experiment;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace urysohn
