#include "urysohn/controls.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include "urysohn/errors.hpp"
#include "urysohn/seed.hpp"

namespace urysohn {

Control::Control(GridFunction values, double q)
    : values_(std::move(values)), q_(q), q_norm_(lp_norm(values_, q)) {}

Control random_admissible(const DiscreteSystem& sys, std::uint64_t seed, double target_norm) {
    const ProblemSpec& pr = sys.problem();
    if (!(target_norm >= 0.0)) throw PreconditionError("target norm must be >= 0");
    if (target_norm > pr.r)
        throw TheoryViolation("target norm " + std::to_string(target_norm) + " exceeds r = " +
                              std::to_string(pr.r));
    GridFunction v(sys.grid(), pr.m);
    if (target_norm == 0.0) return Control(std::move(v), pr.q);
    Rng rng(seed);
    for (double& c : v.values()) c = rng.uniform(-1.0, 1.0);
    const double raw = lp_norm(v, pr.q);
    v *= target_norm / raw;
    return Control(std::move(v), pr.q);
}

std::vector<Control> sample_controls(const DiscreteSystem& sys, std::size_t n, std::uint64_t seed,
                                     bool full_resource) {
    const double r = sys.problem().r;
    Rng norms(seed);
    std::vector<Control> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double target = full_resource ? r : r * norms.uniform();
        out.push_back(random_admissible(sys, derive_seed(seed, k), target));
    }
    return out;
}

Control splice_control(const Control& u, const SubsetMask& mask, const GridFunction& inner) {
    const GridFunction& base = u.values();
    if (mask.grid() != base.grid() || !inner.same_layout(base))
        throw PreconditionError("splice_control: control, mask and inner values must share a grid");
    GridFunction v = base;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!mask.contains(i)) continue;
        std::ranges::copy(inner.at(i), v.at(i).begin());
    }
    return Control(std::move(v), u.q());
}

Control complete_resource(const DiscreteSystem& sys, const Control& u, const SubsetMask& mask,
                          std::span<const double> b_star) {
    const ProblemSpec& pr = sys.problem();
    const GridFunction& base = u.values();
    if (mask.grid() != base.grid()) throw PreconditionError("complete_resource: grid mismatch");
    if (!(mask.measure() > 0.0))
        throw PreconditionError("complete_resource: mask has zero measure, amplitude undefined");
    if (b_star.size() != pr.m) throw PreconditionError("complete_resource: b_star must lie in R^m");
    if (std::abs(euclidean(b_star) - 1.0) > 1e-12)
        throw PreconditionError("complete_resource: b_star must be a unit vector");

    const auto w = base.grid()->weights();
    double off_mass = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (mask.contains(i)) continue;
        const double e = euclidean(base.at(i));
        if (e != 0.0) off_mass += w[i] * std::pow(e, pr.q);
    }
    const double full_mass = std::pow(pr.r, pr.q);
    if (off_mass > full_mass * (1.0 + 1e-12))
        throw TheoryViolation("complete_resource: control already exceeds r off the mask");

    const double amplitude =
        std::pow(std::max(0.0, full_mass - off_mass) / mask.measure(), 1.0 / pr.q);
    GridFunction v = base;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!mask.contains(i)) continue;
        auto vi = v.at(i);
        for (std::size_t c = 0; c < pr.m; ++c) vi[c] = amplitude * b_star[c];
    }
    return Control(std::move(v), pr.q);
}

SurrogateKernel continuous_surrogate(const DiscreteSystem& sys, double epsilon, double c_star) {
    const ProblemSpec& pr = sys.problem();
    const KernelFamily& fam = *pr.family;
    if (!fam.continuous_k2_at_zero())
        throw PreconditionError("continuous_surrogate: K2(.,.,0) is not continuous; "
                                "mollification is not supported");
    const Grid& grid = *sys.grid();
    const std::size_t N = grid.size();
    const std::size_t nm = pr.n * pr.m;

    SurrogateKernel s;
    s.g_star.resize(N * N * nm);
    const std::vector<double> zero(pr.n, 0.0);
    std::vector<double> row_max(N, 0.0);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            std::span<double> g(s.g_star.data() + (i * N + j) * nm, nm);
            fam.k2(grid.node(i), grid.node(j), zero, g);
            row_max[i] = std::max(row_max[i], euclidean(g));
        }
    }
    s.g_eps = s.g_star;
    s.m_eps = *std::max_element(row_max.begin(), row_max.end());
    s.achieved_error = 0.0;
    s.error_budget = std::pow(epsilon, pr.p) / (3.0 * std::pow(c_star, pr.p));
    return s;
}

std::vector<Trajectory> solve_controls(const DiscreteSystem& sys, const std::vector<Control>& controls,
                                       const SolverOptions& options) {
    std::vector<std::optional<Trajectory>> slots(controls.size());
    std::vector<std::exception_ptr> errors(controls.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < controls.size(); ++k) {
        try {
            slots[k] = solve_trajectory(sys, controls[k].values(), options);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    std::vector<Trajectory> out;
    out.reserve(controls.size());
    for (std::size_t k = 0; k < controls.size(); ++k) {
        if (errors[k]) std::rethrow_exception(errors[k]);
        if (!slots[k]->converged)
            throw NonConvergence("trajectory " + std::to_string(k) + " did not converge in " +
                                 std::to_string(slots[k]->iterations) + " iterations");
        out.push_back(std::move(*slots[k]));
    }
    return out;
}

double masked_mass(const GridFunction& x, const SubsetMask& mask, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!mask.contains(i)) continue;
        const double e = euclidean(x.at(i));
        if (e != 0.0) s += x.grid()->weight(i) * std::pow(e, p);
    }
    return s;
}

double worst_prefix_measure(const GridFunction& x, double p, double budget) {
    const Grid& grid = *x.grid();
    const std::size_t N = grid.size();
    std::vector<double> mass(N);
    for (std::size_t i = 0; i < N; ++i) mass[i] = grid.weight(i) * std::pow(euclidean(x.at(i)), p);
    // Same ordering as subset_by_measure's worst_for strategy.
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return mass[a] > mass[b]; });

    std::vector<double> measure(N + 1, 0.0), pmass(N + 1, 0.0);
    for (std::size_t k = 0; k < N; ++k) {
        measure[k + 1] = measure[k] + grid.weight(order[k]);
        pmass[k + 1] = pmass[k] + mass[order[k]];
    }
    // Prefix mass is non-decreasing in k: bisect for the longest prefix within budget.
    std::size_t lo = 0, hi = N;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (pmass[mid] <= budget)
            lo = mid;
        else
            hi = mid - 1;
    }
    return measure[lo];
}

DeltaStarEstimate estimate_delta_star(const DiscreteSystem& sys, double epsilon,
                                      std::size_t n_samples, std::uint64_t seed,
                                      const SolverOptions& options) {
    const ProblemSpec& pr = sys.problem();
    const Constants& c = sys.constants();
    const Grid& grid = *sys.grid();
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be > 0");
    if (!c.condition_2d_satisfied)
        throw TheoryViolation("small-gain condition violated: L* = " + std::to_string(c.l_star));

    DeltaStarEstimate est;
    est.epsilon = epsilon;
    est.n_samples = n_samples;
    if (pr.lambda * pr.r == 0.0) {
        est.unconstrained = true;
        est.cap = inf;
        est.threshold_theta = inf;
        est.empirical_delta = inf;
        est.delta_star = inf;
        return est;
    }

    const double p = pr.p;
    const double mu = grid.total_measure();
    const double cs = *c.c_star;
    const double eps_p = std::pow(epsilon, p);
    const SurrogateKernel sur = continuous_surrogate(sys, epsilon, cs);
    est.m_eps = sur.m_eps;
    const double cap_den = 3.0 * std::pow(sur.m_eps, p) * std::pow(cs, p) * mu;
    est.cap = cap_den > 0.0 ? eps_p / cap_den : inf;
    const double theta_den = 3.0 * std::pow(c.kappa2, p) * std::pow(cs, p) * mu;
    est.threshold_theta = theta_den > 0.0 ? eps_p / theta_den : inf;

    double empirical = mu;
    if (std::isfinite(est.threshold_theta) && n_samples > 0) {
        const auto controls = sample_controls(sys, n_samples, seed, false);
        const auto trajs = solve_controls(sys, controls, options);
        for (const auto& t : trajs)
            empirical = std::min(empirical, worst_prefix_measure(t.values, p, 0.9 * est.threshold_theta));
    }
    est.empirical_delta = empirical;
    est.delta_star = std::min(0.99 * est.cap, empirical);
    if (est.delta_star < grid.min_weight())
        throw GridTooCoarse("delta*(" + std::to_string(epsilon) + ") = " +
                            std::to_string(est.delta_star) + " is below the cell measure " +
                            std::to_string(grid.min_weight()) + "; refine the grid");
    return est;
}

}  // namespace urysohn
