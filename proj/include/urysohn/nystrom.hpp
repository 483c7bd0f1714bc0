#pragma once

#include <vector>

#include "urysohn/grid.hpp"
#include "urysohn/problem.hpp"

namespace urysohn {

/// A problem bound to a grid: constants plus the tabulated kernel coefficients
/// w_j * A1(xi_i, xi_j) and w_j * A2(xi_i, xi_j) used by the parallel operator.
///
/// Immutable after construction; share it freely between threads.
class DiscreteSystem {
public:
    DiscreteSystem(ProblemSpec problem, GridPtr grid);

    const ProblemSpec& problem() const { return problem_; }
    const GridPtr& grid() const { return grid_; }
    const Constants& constants() const { return constants_; }

    std::span<const double> k1_row(std::size_t i) const {
        return {k1_table_.data() + i * grid_->size() * problem_.n, grid_->size() * problem_.n};
    }
    std::span<const double> k2_row(std::size_t i) const {
        return {k2_table_.data() + i * grid_->size() * problem_.n, grid_->size() * problem_.n};
    }

private:
    ProblemSpec problem_;
    GridPtr grid_;
    Constants constants_;
    std::vector<double> k1_table_;
    std::vector<double> k2_table_;
};

/// Discrete right-hand side
///   Phi(x)_i = f(xi_i, x_i) + lambda * sum_j w_j [K1(xi_i, xi_j, x_j) + K2(xi_i, xi_j, x_j) u_j].
///
/// OpenMP-parallel over output nodes; each node's sum runs in ascending j, so the
/// result is bit-identical for any thread count.
GridFunction evaluate_rhs(const DiscreteSystem& sys, const GridFunction& x, const GridFunction& u);

/// Serial reference: evaluates the kernels pointwise, no tables, no threads.
GridFunction evaluate_rhs_reference(const ProblemSpec& problem, const GridFunction& x,
                                    const GridFunction& u);

}  // namespace urysohn
