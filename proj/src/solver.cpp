#include "urysohn/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "urysohn/errors.hpp"

namespace urysohn {

Trajectory solve_trajectory(const DiscreteSystem& sys, const GridFunction& u,
                            const SolverOptions& options, const GridFunction* initial) {
    const ProblemSpec& pr = sys.problem();
    const Constants& c = sys.constants();
    if (!(options.tol > 0.0)) throw PreconditionError("solver tolerance must be > 0");
    if (!c.condition_2d_satisfied && !options.allow_unproven)
        throw TheoryViolation("small-gain condition violated: L* = " + std::to_string(c.l_star) +
                              " >= 1");
    if (u.grid() != sys.grid() || u.dim() != pr.m)
        throw PreconditionError("control does not match the system grid/dimension");
    const double unorm = lp_norm(u, pr.q);
    if (unorm > pr.r + 1e-9)
        throw TheoryViolation("inadmissible control: |u|_q = " + std::to_string(unorm) +
                              " > r = " + std::to_string(pr.r));

    // Step threshold from |x_{k+1} - x*| <= rho/(1-rho) |x_{k+1} - x_k|.
    double step_tol = 0.0;
    if (c.condition_2d_satisfied) {
        const double rho = c.contraction_factor();
        step_tol = rho == 0.0 ? std::numeric_limits<double>::infinity()
                              : options.tol * (1.0 - rho) / rho;
    }

    Trajectory t{initial ? *initial : GridFunction(sys.grid(), pr.n), 0, 0.0, false, {}};
    if (t.values.grid() != sys.grid() || t.values.dim() != pr.n)
        throw PreconditionError("initial iterate does not match the system grid/dimension");

    for (std::size_t k = 0; k < options.max_iter; ++k) {
        GridFunction next = evaluate_rhs(sys, t.values, u);
        const double step = lp_norm(next - t.values, pr.p);
        t.step_norms.push_back(step);
        t.iterations = k + 1;
        if (step <= options.tol) {
            t.residual = step;
            t.converged = true;
            return t;
        }
        t.values = std::move(next);
        if (step <= step_tol) {
            GridFunction after = evaluate_rhs(sys, t.values, u);
            t.residual = lp_norm(after - t.values, pr.p);
            t.step_norms.push_back(t.residual);
            t.converged = t.residual <= options.tol;
            return t;
        }
    }
    t.residual = residual_norm(sys, u, t.values);
    t.converged = t.residual <= options.tol;
    return t;
}

double residual_norm(const DiscreteSystem& sys, const GridFunction& u, const GridFunction& x) {
    return lp_norm(evaluate_rhs(sys, x, u) - x, sys.problem().p);
}

double observed_contraction(const Trajectory& traj) {
    double worst = 0.0;
    const auto& s = traj.step_norms;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (s[k - 1] < 1e-14) continue;
        worst = std::max(worst, s[k] / s[k - 1]);
    }
    return worst;
}

double observed_contraction(const DiscreteSystem& sys, const GridFunction& u,
                            const SolverOptions& options) {
    return observed_contraction(solve_trajectory(sys, u, options));
}

}  // namespace urysohn
