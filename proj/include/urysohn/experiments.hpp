#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "urysohn/controls.hpp"
#include "urysohn/solver.hpp"

namespace urysohn {

enum class MaskStrategy { prefix, random, worst };

MaskStrategy parse_mask_strategy(std::string_view name);
std::string_view to_string(MaskStrategy s);

struct ExperimentOptions {
    SolverOptions solver;
    MaskStrategy mask = MaskStrategy::prefix;
    /// Unit direction of the completed control; empty means the first coordinate axis.
    std::vector<double> b_star;
    /// Trajectories sampled by the delta* estimator.
    std::size_t n_samples = 16;
};

struct SolveStats {
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
    double contraction = 0.0;
};

SolveStats stats_of(const Trajectory& t);

struct RobustnessReport {
    double epsilon = 0.0;
    double r0 = 0.0;
    /// delta*(eps), or the fallback target when the run is unconstrained (lambda r = 0).
    double delta_used = 0.0;
    double mask_measure = 0.0;
    double v_norm = 0.0;
    double distance = 0.0;
    bool bound_satisfied = false;
    bool unconstrained = false;
    SolveStats x_stats;
    SolveStats z_stats;
};

struct DensityRow {
    double epsilon = 0.0;
    double delta_star = 0.0;
    double mask_measure = 0.0;
    double distance = 0.0;
    double full_norm = 0.0;
    bool pass = false;
    SolveStats stats;
};

struct DensityReport {
    double r0 = 0.0;
    SolveStats base_stats;
    std::vector<DensityRow> rows;
};

struct TrajectorySample {
    std::vector<GridFunction> trajectories;
    std::vector<Control> controls;
    bool full_resource = false;
    std::vector<SolveStats> stats;
};

/// Splice u on a set of measure <= delta*(eps) so the new control spends all of r,
/// then compare the two trajectories.
///
/// Seeds: the delta* estimator uses derive_seed(seed, 0), the random mask
/// derive_seed(seed, 1). Pass `estimate` to reuse an existing delta* estimate.
/// When lambda * r = 0 the mask target falls back to a tenth of the domain measure.
RobustnessReport run_robustness(const DiscreteSystem& sys, const Control& u, double epsilon,
                                const ExperimentOptions& options, std::uint64_t seed,
                                const DeltaStarEstimate* estimate = nullptr);

/// One full-resource completion per epsilon of a decreasing schedule.
/// All rows share the estimator seed derive_seed(seed, 0).
DensityReport run_density(const DiscreteSystem& sys, const Control& u,
                          std::span<const double> epsilon_schedule, const ExperimentOptions& options,
                          std::uint64_t seed);

TrajectorySample sample_trajectories(const DiscreteSystem& sys, std::size_t n, std::uint64_t seed,
                                     bool full_resource, const SolverOptions& options = {});

/// Completes every generator of `sample` to full resource on a mask of measure
/// <= delta*(eps) and solves the resulting trajectories.
TrajectorySample complete_sample(const DiscreteSystem& sys, const TrajectorySample& sample,
                                 double epsilon, const ExperimentOptions& options,
                                 std::uint64_t seed);

/// sup_{a in A} inf_{b in B} |a - b|_p over finite samples.
/// Empty A gives 0, empty B with nonempty A gives +infinity.
double directed_hausdorff(std::span<const GridFunction> a, std::span<const GridFunction> b, double p);
double hausdorff(std::span<const GridFunction> a, std::span<const GridFunction> b, double p);

/// Batch of run_robustness rows, ordered epsilon (outer), r0, repeat (inner).
///
/// Row t draws its control from derive_seed(derive_seed(seed, t), 0) and its random
/// mask from derive_seed(derive_seed(seed, t), 1). One delta* estimate per epsilon,
/// seeded with derive_seed(seed, kEstimatorStream), is shared by all its rows.
std::vector<RobustnessReport> sweep(const DiscreteSystem& sys, std::span<const double> epsilons,
                                    std::span<const double> r0_list, std::size_t n_repeats,
                                    std::uint64_t seed, const ExperimentOptions& options);

inline constexpr std::uint64_t kEstimatorStream = std::uint64_t{1} << 63;

}  // namespace urysohn
