#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "urysohn/nystrom.hpp"

namespace urysohn {

struct SolverOptions {
    double tol = 1e-10;
    std::size_t max_iter = 10000;
    /// Iterate even when the small-gain condition fails.
    bool allow_unproven = false;
};

struct Trajectory {
    GridFunction values;
    std::size_t iterations = 0;
    /// |Phi(x) - x|_p of the returned iterate.
    double residual = 0.0;
    bool converged = false;
    /// |x_{k+1} - x_k|_p for every Picard step taken.
    std::vector<double> step_norms;
};

/// Picard iteration x_{k+1} = Phi(x_k) from x_0 = 0 (or `initial`).
///
/// Stops when the residual drops below `tol`, or when the a-posteriori bound
/// rho/(1-rho) * |x_{k+1} - x_k| with rho = L*^(1/p) guarantees the distance to
/// the fixed point is below `tol`. Throws TheoryViolation for an inadmissible
/// control or when the small-gain condition fails without `allow_unproven`.
Trajectory solve_trajectory(const DiscreteSystem& sys, const GridFunction& u,
                            const SolverOptions& options = {},
                            const GridFunction* initial = nullptr);

double residual_norm(const DiscreteSystem& sys, const GridFunction& u, const GridFunction& x);

/// Largest ratio of consecutive step norms (denominators below 1e-14 skipped).
/// Zero when fewer than two steps were taken.
double observed_contraction(const Trajectory& traj);
double observed_contraction(const DiscreteSystem& sys, const GridFunction& u,
                            const SolverOptions& options = {});

}  // namespace urysohn
