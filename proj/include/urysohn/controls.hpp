#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "urysohn/grid.hpp"
#include "urysohn/nystrom.hpp"
#include "urysohn/solver.hpp"

namespace urysohn {

/// Node-valued control with its cached L_q norm.
class Control {
public:
    Control(GridFunction values, double q);

    const GridFunction& values() const { return values_; }
    double q() const { return q_; }
    double q_norm() const { return q_norm_; }
    bool admissible(double r) const { return q_norm_ <= r + 1e-9; }

private:
    GridFunction values_;
    double q_;
    double q_norm_;
};

/// Node values i.i.d. uniform on [-1, 1]^m, rescaled so that |u|_q = target_norm.
Control random_admissible(const DiscreteSystem& sys, std::uint64_t seed, double target_norm);

/// `n` seeded controls; norms equal r when `full_resource`, otherwise uniform on [0, r].
/// Control k uses seed derive_seed(seed, k).
std::vector<Control> sample_controls(const DiscreteSystem& sys, std::size_t n, std::uint64_t seed,
                                     bool full_resource);

/// v = u off the mask, v = inner on it.
Control splice_control(const Control& u, const SubsetMask& mask, const GridFunction& inner);

/// u* = u off the mask and [(r^q - r1^q) / mu(mask)]^(1/q) b_star on it, where
/// r1^q is the q-mass of u off the mask. The result has |u*|_q = r.
Control complete_resource(const DiscreteSystem& sys, const Control& u, const SubsetMask& mask,
                          std::span<const double> b_star);

struct SurrogateKernel {
    /// K2(xi_i, xi_j, 0), layout [i][j][n x m].
    std::vector<double> g_star;
    std::vector<double> g_eps;
    double m_eps = 0.0;
    /// L_p distance between g_star and g_eps over the product grid.
    double achieved_error = 0.0;
    /// Right-hand side eps^p / (3 c*^p) the approximation error must stay under.
    double error_budget = 0.0;
};

/// Continuous stand-in for K2(., ., 0). Only kernels already continuous at x = 0 are
/// supported; the surrogate is then the kernel itself.
SurrogateKernel continuous_surrogate(const DiscreteSystem& sys, double epsilon, double c_star);

struct DeltaStarEstimate {
    double epsilon = 0.0;
    /// eps^p / (3 M^p c*^p mu): upper end of the admissible interval.
    double cap = 0.0;
    /// eps^p / (3 kappa2^p c*^p mu): allowed p-mass of any trajectory on a small set.
    double threshold_theta = 0.0;
    double empirical_delta = 0.0;
    std::size_t n_samples = 0;
    double delta_star = 0.0;
    double m_eps = 0.0;
    /// lambda * r == 0: the control does not reach the state, any subset works.
    bool unconstrained = false;
};

/// Sampling surrogate for the non-constructive delta*(eps).
///
/// Solves `n_samples` trajectories from controls of sample_controls(sys, n, seed, false),
/// then bisects over the worst-case (largest p-mass first) prefix of each trajectory for
/// the largest measure whose p-mass stays below 0.9 theta. The answer is
/// min(0.99 cap, that measure). Throws GridTooCoarse when it is smaller than one cell.
DeltaStarEstimate estimate_delta_star(const DiscreteSystem& sys, double epsilon,
                                      std::size_t n_samples, std::uint64_t seed,
                                      const SolverOptions& options = {});

/// Measure of the largest worst-case prefix of `x` whose p-mass is at most `budget`.
double worst_prefix_measure(const GridFunction& x, double p, double budget);

/// p-mass sum_{i in mask} w_i |x_i|^p.
double masked_mass(const GridFunction& x, const SubsetMask& mask, double p);

}  // namespace urysohn

namespace urysohn {

/// Solves every control (OpenMP over controls); results come back in input order.
/// Throws NonConvergence if any solve misses its tolerance.
std::vector<Trajectory> solve_controls(const DiscreteSystem& sys, const std::vector<Control>& controls,
                                       const SolverOptions& options = {});

}  // namespace urysohn
