#include "urysohn/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "urysohn/errors.hpp"

namespace urysohn {

double conjugate_exponent(double q) {
    if (!(q > 1.0) || !std::isfinite(q)) throw PreconditionError("q must be finite and > 1");
    return q / (q - 1.0);
}

ProblemSpec ProblemSpec::make(FamilyPtr family, double lambda, double q, double r,
                              std::optional<DomainSpec> domain) {
    if (!family) throw PreconditionError("problem needs a kernel family");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw PreconditionError("lambda must be >= 0");
    if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("r must be > 0");
    ProblemSpec spec;
    spec.q = q;
    spec.p = conjugate_exponent(q);
    if (std::abs(1.0 / spec.p + 1.0 / spec.q - 1.0) > 1e-14)
        throw PreconditionError("exponents are not conjugate to working precision");
    spec.lambda = lambda;
    spec.r = r;
    spec.n = family->state_dim();
    spec.m = family->control_dim();
    spec.domain = domain.value_or(family->default_domain());
    spec.domain.validate();
    if (spec.domain.dimension() != family->domain_dim())
        throw PreconditionError("family '" + std::string(family->name()) + "' needs a " +
                                std::to_string(family->domain_dim()) + "-dimensional domain");
    spec.family = std::move(family);
    return spec;
}

ProblemSpec default_problem(std::string_view family) {
    return ProblemSpec::make(make_family(family), 0.5, 2.0, 1.0);
}

double Constants::contraction_factor() const { return std::pow(l_star, 1.0 / p); }

Constants constants_from_bounds(const KernelBounds& b, double lambda, double p, double q, double r,
                                double measure) {
    Constants c;
    c.kappa0 = b.kappa0;
    c.kappa1 = b.kappa1;
    c.kappa2 = b.kappa2;
    c.alpha0 = b.alpha0;
    c.alpha1 = b.alpha1;
    c.alpha2 = b.alpha2;
    c.measure = measure;
    c.p = p;

    const double six = std::pow(6.0, p - 1.0);
    const double lp = std::pow(lambda, p);
    const double rp = std::pow(r, p);
    c.l_star = six * (std::pow(b.kappa0, p) + lp * std::pow(b.kappa1, p) +
                      lp * rp * std::pow(b.kappa2, p) * measure);
    c.t_star = six * (std::pow(b.alpha0, p) + lp * std::pow(b.alpha1, p) * std::pow(measure, p / q) +
                      lp * std::pow(b.alpha2, p) * rp);
    c.condition_2d_satisfied = c.l_star < 1.0;
    if (c.condition_2d_satisfied) {
        c.beta_star = std::pow(c.t_star / (1.0 - c.l_star), 1.0 / p);
        c.c_star = 2.0 * lambda * r * std::pow(six / (1.0 - c.l_star), 1.0 / p);
    }
    return c;
}

KernelBounds compute_kernel_bounds(const ProblemSpec& problem, const Grid& grid) {
    const KernelFamily& fam = *problem.family;
    const std::size_t N = grid.size();
    const std::size_t n = problem.n;
    const std::size_t m = problem.m;
    const double p = problem.p;
    const double q = problem.q;
    const auto w = grid.weights();

    // Per-row partial results; rows run in parallel, the outer sums below are sequential.
    std::vector<double> kappa1_row(N), alpha1_row(N), alpha2_row(N), kappa2_row(N);
#pragma omp parallel
    {
        std::vector<double> zero(n, 0.0), k1v(n), k2v(n * m);
#pragma omp for schedule(static)
        for (std::size_t i = 0; i < N; ++i) {
            const Point& xi = grid.node(i);
            double g1 = 0.0, a1 = 0.0, a2 = 0.0, g2max = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                const Point& s = grid.node(j);
                g1 += w[j] * std::pow(fam.gamma1(xi, s), q);
                fam.k1(xi, s, zero, k1v);
                const double n1 = euclidean(k1v);
                if (n1 != 0.0) a1 += w[j] * std::pow(n1, p);
                fam.k2(xi, s, zero, k2v);
                const double n2 = euclidean(k2v);
                if (n2 != 0.0) a2 += w[j] * std::pow(n2, p);
                g2max = std::max(g2max, fam.gamma2(xi, s));
            }
            kappa1_row[i] = std::pow(g1, p / q);
            alpha1_row[i] = a1;
            alpha2_row[i] = a2;
            kappa2_row[i] = g2max;
        }
    }

    KernelBounds b;
    std::vector<double> zero(n, 0.0), fv(n);
    double k1sum = 0.0, a0sum = 0.0, a1sum = 0.0, a2sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        b.kappa0 = std::max(b.kappa0, fam.gamma0(grid.node(i)));
        b.kappa2 = std::max(b.kappa2, kappa2_row[i]);
        fam.f(grid.node(i), zero, fv);
        const double f0 = euclidean(fv);
        if (f0 != 0.0) a0sum += w[i] * std::pow(f0, p);
        k1sum += w[i] * kappa1_row[i];
        a1sum += w[i] * alpha1_row[i];
        a2sum += w[i] * alpha2_row[i];
    }
    b.kappa1 = std::pow(k1sum, 1.0 / p);
    b.alpha0 = std::pow(a0sum, 1.0 / p);
    b.alpha1 = std::pow(a1sum, 1.0 / p);
    b.alpha2 = std::pow(a2sum, 1.0 / p);
    return b;
}

Constants compute_constants(const ProblemSpec& problem, const Grid& grid) {
    const KernelBounds b = compute_kernel_bounds(problem, grid);
    return constants_from_bounds(b, problem.lambda, problem.p, problem.q, problem.r,
                                 grid.total_measure());
}

SmallGain check_small_gain(const Constants& c) {
    return {c.l_star < 1.0, 1.0 - c.l_star};
}

}  // namespace urysohn
