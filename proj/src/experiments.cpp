#include "urysohn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "urysohn/errors.hpp"
#include "urysohn/seed.hpp"

namespace urysohn {

MaskStrategy parse_mask_strategy(std::string_view name) {
    if (name == "prefix") return MaskStrategy::prefix;
    if (name == "random") return MaskStrategy::random;
    if (name == "worst") return MaskStrategy::worst;
    throw ConfigError("unknown mask strategy '" + std::string(name) + "'");
}

std::string_view to_string(MaskStrategy s) {
    switch (s) {
        case MaskStrategy::prefix: return "prefix";
        case MaskStrategy::random: return "random";
        case MaskStrategy::worst: return "worst";
    }
    return "prefix";
}

SolveStats stats_of(const Trajectory& t) {
    return {t.iterations, t.residual, t.converged, observed_contraction(t)};
}

namespace {

Trajectory solve_or_throw(const DiscreteSystem& sys, const GridFunction& u, const SolverOptions& o) {
    Trajectory t = solve_trajectory(sys, u, o);
    if (!t.converged)
        throw NonConvergence("Picard iteration did not converge in " + std::to_string(t.iterations) +
                             " iterations (residual " + std::to_string(t.residual) + ")");
    return t;
}

std::vector<double> direction(const DiscreteSystem& sys, const ExperimentOptions& options) {
    if (!options.b_star.empty()) return options.b_star;
    std::vector<double> b(sys.problem().m, 0.0);
    b[0] = 1.0;
    return b;
}

SubsetMask choose_mask(const DiscreteSystem& sys, double target, MaskStrategy strategy,
                       const GridFunction& x, std::uint64_t seed) {
    switch (strategy) {
        case MaskStrategy::random: return subset_by_measure(sys.grid(), target, RandomStrategy{seed});
        case MaskStrategy::worst:
            return subset_by_measure(sys.grid(), target, WorstForStrategy{&x, sys.problem().p});
        case MaskStrategy::prefix: break;
    }
    return subset_by_measure(sys.grid(), target, PrefixStrategy{});
}

double mask_target(const DiscreteSystem& sys, const DeltaStarEstimate& est) {
    return est.unconstrained ? 0.1 * sys.grid()->total_measure() : est.delta_star;
}

template <class Fn>
void parallel_rows(std::size_t count, Fn&& fn) {
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < count; ++k) {
        try {
            fn(k);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

RobustnessReport run_robustness(const DiscreteSystem& sys, const Control& u, double epsilon,
                                const ExperimentOptions& options, std::uint64_t seed,
                                const DeltaStarEstimate* estimate) {
    const ProblemSpec& pr = sys.problem();
    if (!(u.q_norm() < pr.r))
        throw PreconditionError("run_robustness: needs |u|_q = r0 < r, got " +
                                std::to_string(u.q_norm()));
    const DeltaStarEstimate est =
        estimate ? *estimate
                 : estimate_delta_star(sys, epsilon, options.n_samples, derive_seed(seed, 0),
                                       options.solver);

    RobustnessReport rep;
    rep.epsilon = epsilon;
    rep.r0 = u.q_norm();
    rep.unconstrained = est.unconstrained;
    rep.delta_used = mask_target(sys, est);

    const Trajectory x = solve_or_throw(sys, u.values(), options.solver);
    const SubsetMask mask = choose_mask(sys, rep.delta_used, options.mask, x.values, derive_seed(seed, 1));
    const Control v = complete_resource(sys, u, mask, direction(sys, options));
    const Trajectory z = solve_or_throw(sys, v.values(), options.solver);

    rep.mask_measure = mask.measure();
    rep.v_norm = v.q_norm();
    rep.distance = lp_norm(x.values - z.values, pr.p);
    rep.bound_satisfied = rep.distance <= epsilon;
    rep.x_stats = stats_of(x);
    rep.z_stats = stats_of(z);
    return rep;
}

DensityReport run_density(const DiscreteSystem& sys, const Control& u,
                          std::span<const double> epsilon_schedule, const ExperimentOptions& options,
                          std::uint64_t seed) {
    const ProblemSpec& pr = sys.problem();
    if (!(u.q_norm() < pr.r))
        throw PreconditionError("run_density: needs |u|_q = r0 < r, got " + std::to_string(u.q_norm()));
    for (std::size_t k = 1; k < epsilon_schedule.size(); ++k)
        if (!(epsilon_schedule[k] < epsilon_schedule[k - 1]))
            throw PreconditionError("run_density: epsilon schedule must be strictly decreasing");

    DensityReport rep;
    rep.r0 = u.q_norm();
    const Trajectory x = solve_or_throw(sys, u.values(), options.solver);
    rep.base_stats = stats_of(x);
    const auto b = direction(sys, options);
    for (double eps : epsilon_schedule) {
        const DeltaStarEstimate est =
            estimate_delta_star(sys, eps, options.n_samples, derive_seed(seed, 0), options.solver);
        DensityRow row;
        row.epsilon = eps;
        row.delta_star = mask_target(sys, est);
        const SubsetMask mask = choose_mask(sys, row.delta_star, options.mask, x.values, derive_seed(seed, 1));
        const Control full = complete_resource(sys, u, mask, b);
        const Trajectory xs = solve_or_throw(sys, full.values(), options.solver);
        row.mask_measure = mask.measure();
        row.full_norm = full.q_norm();
        row.distance = lp_norm(x.values - xs.values, pr.p);
        row.pass = row.distance <= eps;
        row.stats = stats_of(xs);
        rep.rows.push_back(row);
    }
    return rep;
}

TrajectorySample sample_trajectories(const DiscreteSystem& sys, std::size_t n, std::uint64_t seed,
                                     bool full_resource, const SolverOptions& options) {
    TrajectorySample s;
    s.full_resource = full_resource;
    s.controls = sample_controls(sys, n, seed, full_resource);
    for (auto& t : solve_controls(sys, s.controls, options)) {
        s.stats.push_back(stats_of(t));
        s.trajectories.push_back(std::move(t.values));
    }
    return s;
}

TrajectorySample complete_sample(const DiscreteSystem& sys, const TrajectorySample& sample,
                                 double epsilon, const ExperimentOptions& options,
                                 std::uint64_t seed) {
    const DeltaStarEstimate est =
        estimate_delta_star(sys, epsilon, options.n_samples, derive_seed(seed, 0), options.solver);
    const auto b = direction(sys, options);
    TrajectorySample out;
    out.full_resource = true;
    for (std::size_t k = 0; k < sample.controls.size(); ++k) {
        const SubsetMask mask = choose_mask(sys, mask_target(sys, est), options.mask,
                                            sample.trajectories[k], derive_seed(seed, k + 1));
        out.controls.push_back(complete_resource(sys, sample.controls[k], mask, b));
    }
    for (auto& t : solve_controls(sys, out.controls, options.solver)) {
        out.stats.push_back(stats_of(t));
        out.trajectories.push_back(std::move(t.values));
    }
    return out;
}

double directed_hausdorff(std::span<const GridFunction> a, std::span<const GridFunction> b, double p) {
    if (a.empty()) return 0.0;
    if (b.empty()) return std::numeric_limits<double>::infinity();
    double sup = 0.0;
    for (const auto& x : a) {
        double inf = std::numeric_limits<double>::infinity();
        for (const auto& y : b) {
            if (!x.same_layout(y)) throw PreconditionError("directed_hausdorff: grid/dimension mismatch");
            inf = std::min(inf, lp_norm(x - y, p));
        }
        sup = std::max(sup, inf);
    }
    return sup;
}

double hausdorff(std::span<const GridFunction> a, std::span<const GridFunction> b, double p) {
    return std::max(directed_hausdorff(a, b, p), directed_hausdorff(b, a, p));
}

std::vector<RobustnessReport> sweep(const DiscreteSystem& sys, std::span<const double> epsilons,
                                    std::span<const double> r0_list, std::size_t n_repeats,
                                    std::uint64_t seed, const ExperimentOptions& options) {
    const ProblemSpec& pr = sys.problem();
    for (double r0 : r0_list)
        if (!(r0 >= 0.0 && r0 < pr.r))
            throw PreconditionError("sweep: every r0 must lie in [0, r), got " + std::to_string(r0));

    std::vector<DeltaStarEstimate> estimates;
    for (double eps : epsilons)
        estimates.push_back(estimate_delta_star(sys, eps, options.n_samples,
                                                derive_seed(seed, kEstimatorStream), options.solver));

    const std::size_t per_eps = r0_list.size() * n_repeats;
    std::vector<RobustnessReport> rows(epsilons.size() * per_eps);
    parallel_rows(rows.size(), [&](std::size_t t) {
        const std::size_t e = t / per_eps;
        const std::size_t r = (t % per_eps) / n_repeats;
        const std::uint64_t row_seed = derive_seed(seed, t);
        const Control u = random_admissible(sys, derive_seed(row_seed, 0), r0_list[r]);
        rows[t] = run_robustness(sys, u, epsilons[e], options, row_seed, &estimates[e]);
    });
    return rows;
}

}  // namespace urysohn
