#include "urysohn/nystrom.hpp"

#include <string>

#include "urysohn/errors.hpp"

namespace urysohn {
namespace {

// N^2 * n doubles per table.
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 26;

void check_inputs(const ProblemSpec& problem, const GridPtr& grid, const GridFunction& x,
                  const GridFunction& u) {
    if (x.grid() != grid || u.grid() != grid)
        throw PreconditionError("evaluate_rhs: state and control must live on the system grid");
    if (x.dim() != problem.n)
        throw PreconditionError("evaluate_rhs: state dimension " + std::to_string(x.dim()) +
                                " != n = " + std::to_string(problem.n));
    if (u.dim() != problem.m)
        throw PreconditionError("evaluate_rhs: control dimension " + std::to_string(u.dim()) +
                                " != m = " + std::to_string(problem.m));
}

}  // namespace

DiscreteSystem::DiscreteSystem(ProblemSpec problem, GridPtr grid)
    : problem_(std::move(problem)), grid_(std::move(grid)) {
    if (!grid_) throw PreconditionError("DiscreteSystem needs a grid");
    const DomainSpec& a = grid_->domain();
    const DomainSpec& b = problem_.domain;
    if (a.kind != b.kind || a.lower != b.lower || a.upper != b.upper)
        throw PreconditionError("grid was not built over the problem domain");

    const std::size_t N = grid_->size();
    const std::size_t n = problem_.n;
    if (N * N * n > kMaxTableEntries)
        throw PreconditionError("grid too fine for the tabulated operator (" + std::to_string(N) +
                                " nodes)");

    constants_ = compute_constants(problem_, *grid_);

    k1_table_.resize(N * N * n);
    k2_table_.resize(N * N * n);
    const KernelFamily& fam = *problem_.family;
    const auto w = grid_->weights();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            const std::size_t off = (i * N + j) * n;
            std::span<double> c1(k1_table_.data() + off, n);
            std::span<double> c2(k2_table_.data() + off, n);
            fam.k1_coeff(grid_->node(i), grid_->node(j), c1);
            fam.k2_coeff(grid_->node(i), grid_->node(j), c2);
            for (std::size_t a = 0; a < n; ++a) {
                c1[a] *= w[j];
                c2[a] *= w[j];
            }
        }
    }
}

GridFunction evaluate_rhs(const DiscreteSystem& sys, const GridFunction& x, const GridFunction& u) {
    const ProblemSpec& pr = sys.problem();
    check_inputs(pr, sys.grid(), x, u);
    const KernelFamily& fam = *pr.family;
    const Grid& grid = *sys.grid();
    const std::size_t N = grid.size();
    const std::size_t n = pr.n;
    const std::size_t m = pr.m;

    // Node features: phi(x_j) and psi(x_j) u_j.
    std::vector<double> phi(N * n), psi_u(N * n);
    {
        std::vector<double> psi(n * m);
        for (std::size_t j = 0; j < N; ++j) {
            fam.k1_feature(x.at(j), std::span<double>(phi.data() + j * n, n));
            fam.k2_feature(x.at(j), psi);
            const auto uj = u.at(j);
            for (std::size_t a = 0; a < n; ++a) {
                double s = 0.0;
                for (std::size_t c = 0; c < m; ++c) s += psi[a * m + c] * uj[c];
                psi_u[j * n + a] = s;
            }
        }
    }

    GridFunction out(sys.grid(), n);
    const double lambda = pr.lambda;
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < N; ++i) {
        auto oi = out.at(i);
        fam.f(grid.node(i), x.at(i), oi);
        if (lambda == 0.0) continue;
        const auto t1 = sys.k1_row(i);
        const auto t2 = sys.k2_row(i);
        for (std::size_t a = 0; a < n; ++a) {
            double acc = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                const std::size_t k = j * n + a;
                acc += t1[k] * phi[k] + t2[k] * psi_u[k];
            }
            oi[a] += lambda * acc;
        }
    }
    return out;
}

GridFunction evaluate_rhs_reference(const ProblemSpec& problem, const GridFunction& x,
                                    const GridFunction& u) {
    check_inputs(problem, x.grid(), x, u);
    const KernelFamily& fam = *problem.family;
    const Grid& grid = *x.grid();
    const std::size_t N = grid.size();
    const std::size_t n = problem.n;
    const std::size_t m = problem.m;

    GridFunction out(x.grid(), n);
    std::vector<double> k1v(n), k2v(n * m), acc(n);
    for (std::size_t i = 0; i < N; ++i) {
        const Point& xi = grid.node(i);
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t j = 0; j < N; ++j) {
            fam.k1(xi, grid.node(j), x.at(j), k1v);
            fam.k2(xi, grid.node(j), x.at(j), k2v);
            const auto uj = u.at(j);
            for (std::size_t a = 0; a < n; ++a) {
                double v = k1v[a];
                for (std::size_t c = 0; c < m; ++c) v += k2v[a * m + c] * uj[c];
                acc[a] += grid.weight(j) * v;
            }
        }
        auto oi = out.at(i);
        fam.f(xi, x.at(i), oi);
        for (std::size_t a = 0; a < n; ++a) oi[a] += problem.lambda * acc[a];
    }
    return out;
}

}  // namespace urysohn
