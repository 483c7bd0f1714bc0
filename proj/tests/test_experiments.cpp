#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "urysohn/errors.hpp"
#include "urysohn/experiments.hpp"

using namespace urysohn;

namespace {

DiscreteSystem default_system(const char* name, std::size_t cells) {
    const ProblemSpec pr = default_problem(name);
    return DiscreteSystem(pr, build_grid(pr.domain, cells));
}

DiscreteSystem idle_system(std::size_t cells) {
    const ProblemSpec pr = ProblemSpec::make(make_family("scalar-smooth"), 0.0, 2.0, 1.0);
    return DiscreteSystem(pr, build_grid(pr.domain, cells));
}

const double kE1[] = {1.0};

}  // namespace

TEST_CASE("mask strategy names round-trip") {
    for (MaskStrategy s : {MaskStrategy::prefix, MaskStrategy::random, MaskStrategy::worst})
        CHECK(parse_mask_strategy(to_string(s)) == s);
    CHECK_THROWS_AS(parse_mask_strategy("largest"), ConfigError);
}

TEST_CASE("robustness without control coupling") {
    const DiscreteSystem sys = idle_system(100);
    const ExperimentOptions opt;
    const RobustnessReport rep = run_robustness(sys, random_admissible(sys, 3, 0.5), 0.1, opt, 1);
    CHECK(rep.unconstrained);
    CHECK(rep.delta_used == doctest::Approx(0.1));
    CHECK(rep.distance <= opt.solver.tol);
    CHECK(rep.bound_satisfied);
}

TEST_CASE("robustness on the linear family against the dense oracle") {
    const DiscreteSystem sys = default_system("linear-exact", 400);
    const ExperimentOptions opt;
    const Control u = random_admissible(sys, 21, 0.6);
    const RobustnessReport rep = run_robustness(sys, u, 0.1, opt, 9);
    CHECK(rep.bound_satisfied);
    CHECK(rep.mask_measure <= rep.delta_used);
    CHECK(rep.v_norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.r0 == doctest::Approx(0.6).epsilon(1e-12));

    const auto mask = subset_by_measure(sys.grid(), rep.delta_used, PrefixStrategy{});
    const Control v = complete_resource(sys, u, mask, kE1);
    const auto M = testing::linear_family_matrices(sys.problem(), *sys.grid());
    const double lambda = sys.problem().lambda;
    const double dense = testing::weighted_lp(*sys.grid(), testing::linear_solve(M, lambda, testing::to_eigen(u.values())),
                                              testing::linear_solve(M, lambda, testing::to_eigen(v.values())), 2.0);
    CHECK(rep.distance == doctest::Approx(dense).epsilon(1e-6));

    const RobustnessReport half = run_robustness(sys, u, 0.05, opt, 9);
    CHECK(half.delta_used <= rep.delta_used);
    CHECK(half.bound_satisfied);
}

TEST_CASE("robustness preconditions") {
    const DiscreteSystem sys = default_system("scalar-smooth", 100);
    CHECK_THROWS_AS(run_robustness(sys, random_admissible(sys, 1, 1.0), 0.1, {}, 1), PreconditionError);
    CHECK_THROWS_AS(run_robustness(sys, random_admissible(sys, 1, 0.5), 0.0, {}, 1), PreconditionError);
}

TEST_CASE("density runs") {
    const DiscreteSystem idle = idle_system(100);
    const double schedule[] = {0.2, 0.1, 0.05};
    const DensityReport flat = run_density(idle, random_admissible(idle, 2, 0.3), schedule, {}, 4);
    for (const DensityRow& row : flat.rows) CHECK(row.distance <= 1e-10);

    const DiscreteSystem sys = default_system("scalar-smooth", 400);
    const DensityReport rep = run_density(sys, random_admissible(sys, 2, 0.3), schedule, {}, 4);
    REQUIRE(rep.rows.size() == 3);
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
        const DensityRow& row = rep.rows[k];
        CAPTURE(row.epsilon);
        CHECK(row.pass);
        CHECK(row.distance <= row.epsilon);
        CHECK(row.mask_measure <= row.delta_star);
        CHECK(row.full_norm == doctest::Approx(1.0).epsilon(1e-10));
        if (k > 0) CHECK(row.distance <= 1.1 * rep.rows[k - 1].distance);
    }

    const double rising[] = {0.05, 0.1};
    CHECK_THROWS_AS(run_density(sys, random_admissible(sys, 2, 0.3), rising, {}, 4), PreconditionError);
}

TEST_CASE("trajectory samples") {
    const DiscreteSystem sys = default_system("scalar-smooth", 200);
    CHECK(sample_trajectories(sys, 0, 1, false).trajectories.empty());

    const TrajectorySample s = sample_trajectories(sys, 16, 1, false);
    REQUIRE(s.trajectories.size() == 16);
    for (const GridFunction& x : s.trajectories) CHECK(lp_norm(x, 2.0) <= *sys.constants().beta_star);

    const TrajectorySample full = sample_trajectories(sys, 4, 1, true);
    for (const Control& c : full.controls) CHECK(c.q_norm() == doctest::Approx(1.0).epsilon(1e-12));

    const TrajectorySample done = complete_sample(sys, s, 0.1, {}, 3);
    REQUIRE(done.controls.size() == 16);
    for (const Control& c : done.controls) CHECK(c.q_norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(directed_hausdorff(s.trajectories, done.trajectories, 2.0) <= 0.1);
}

TEST_CASE("Hausdorff distance of finite samples") {
    const auto g = build_grid(DomainSpec::interval(0.0, 1.0), 10);
    auto constant = [&](double v) {
        GridFunction f(g, 1);
        for (double& x : f.values()) x = v;
        return f;
    };
    const std::vector<GridFunction> a{constant(0.0), constant(1.0)};
    const std::vector<GridFunction> b{constant(0.0), constant(1.0), constant(5.0)};
    const std::vector<GridFunction> none;

    CHECK(hausdorff(a, a, 2.0) == 0.0);
    CHECK(directed_hausdorff(a, b, 2.0) == 0.0);
    CHECK(directed_hausdorff(b, a, 2.0) == doctest::Approx(4.0));
    CHECK(hausdorff(std::vector{constant(1.0)}, std::vector{constant(3.5)}, 2.0) == doctest::Approx(2.5));
    CHECK(directed_hausdorff(none, a, 2.0) == 0.0);
    CHECK(std::isinf(directed_hausdorff(a, none, 2.0)));
}

TEST_CASE("sweep") {
    const DiscreteSystem sys = default_system("scalar-smooth", 400);
    const ExperimentOptions opt;
    const double r0s[] = {0.3, 0.6};
    CHECK(sweep(sys, std::span<const double>{}, r0s, 5, 1, opt).empty());

    const double eps[] = {0.5, 0.1, 0.05};
    const auto rows = sweep(sys, eps, r0s, 5, 1, opt);
    REQUIRE(rows.size() == 30);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        CAPTURE(t);
        CHECK(rows[t].epsilon == eps[t / 10]);
        CHECK(rows[t].r0 == doctest::Approx(r0s[(t % 10) / 5]).epsilon(1e-12));
        CHECK(rows[t].bound_satisfied);
        CHECK(rows[t].mask_measure <= rows[t].delta_used);
    }

    const auto again = sweep(sys, eps, r0s, 5, 1, opt);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        CHECK(rows[t].distance == again[t].distance);
        CHECK(rows[t].delta_used == again[t].delta_used);
    }
    const double bad_r0[] = {1.0};
    CHECK_THROWS_AS(sweep(sys, eps, bad_r0, 1, 1, opt), PreconditionError);
}
