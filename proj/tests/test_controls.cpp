#include <doctest.h>

#include <cmath>

#include "urysohn/controls.hpp"
#include "urysohn/errors.hpp"
#include "urysohn/seed.hpp"

using namespace urysohn;

namespace {

DiscreteSystem scalar_system(double r, std::size_t cells, std::map<std::string, double> params = {}) {
    const ProblemSpec pr = ProblemSpec::make(make_family("scalar-smooth", params), 0.5, 2.0, r);
    return DiscreteSystem(pr, build_grid(pr.domain, cells));
}

DiscreteSystem default_system(const char* name, std::size_t cells) {
    const ProblemSpec pr = default_problem(name);
    return DiscreteSystem(pr, build_grid(pr.domain, cells));
}

GridFunction constant(const GridPtr& g, std::size_t dim, double v) {
    GridFunction out(g, dim);
    for (double& x : out.values()) x = v;
    return out;
}

const double kE1[] = {1.0};

}  // namespace

TEST_CASE("random admissible controls hit their target norm") {
    for (const char* name : {"scalar-smooth", "planar"}) {
        const DiscreteSystem sys = default_system(name, name[0] == 'p' ? 10 : 100);
        const double r = sys.problem().r;
        const Control zero = random_admissible(sys, 1, 0.0);
        CHECK(zero.q_norm() == 0.0);
        const Control full = random_admissible(sys, 2, r);
        CHECK(std::abs(full.q_norm() - r) <= 1e-12);
        CHECK(full.admissible(r));
        CHECK(random_admissible(sys, 3, 0.4).values() == random_admissible(sys, 3, 0.4).values());
        CHECK_FALSE(random_admissible(sys, 3, 0.4).values() == random_admissible(sys, 4, 0.4).values());
        CHECK_THROWS_AS(random_admissible(sys, 1, 1.5 * r), TheoryViolation);
    }
}

TEST_CASE("sampled controls are admissible and reproducible") {
    const DiscreteSystem sys = default_system("scalar-smooth", 50);
    const auto a = sample_controls(sys, 40, 8, false);
    const auto b = sample_controls(sys, 40, 8, false);
    REQUIRE(a.size() == 40);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].admissible(sys.problem().r));
        CHECK(a[k].values() == b[k].values());
    }
    for (const Control& c : sample_controls(sys, 10, 8, true))
        CHECK(c.q_norm() == doctest::Approx(sys.problem().r).epsilon(1e-12));
}

TEST_CASE("splice control") {
    const DiscreteSystem sys = scalar_system(1.0, 100);
    const auto g = sys.grid();
    const Control u(constant(g, 1, 1.0), 2.0);
    const GridFunction half = constant(g, 1, 0.5);

    const Control none = splice_control(u, subset_by_measure(g, 0.0, PrefixStrategy{}), half);
    CHECK(none.values() == u.values());
    const Control all = splice_control(u, subset_by_measure(g, 1.0, PrefixStrategy{}), half);
    CHECK(all.values() == half);
    // Fifty cell weights of 0.01 sum to slightly above 0.5, hence the 0.505 target.
    const auto first_half = subset_by_measure(g, 0.505, PrefixStrategy{});
    REQUIRE(first_half.count() == 50);
    const Control mixed = splice_control(u, first_half, half);
    CHECK(mixed.q_norm() == doctest::Approx(std::sqrt(0.625)).epsilon(1e-13));

    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const auto mask = subset_by_measure(g, rng.uniform(), RandomStrategy{rng.below(1000)});
        const Control v = splice_control(u, mask, u.values());
        CHECK(v.values() == u.values());
    }
}

TEST_CASE("complete resource examples") {
    const DiscreteSystem sys = scalar_system(1.0, 100);
    const auto g = sys.grid();
    const auto tenth = subset_by_measure(g, 0.1, PrefixStrategy{});
    REQUIRE(tenth.measure() == doctest::Approx(0.1));

    const Control filled = complete_resource(sys, Control(GridFunction(g, 1), 2.0), tenth, kE1);
    CHECK(filled.values().at(0)[0] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
    CHECK(filled.values().at(99)[0] == 0.0);
    CHECK(filled.q_norm() == doctest::Approx(1.0).epsilon(1e-12));

    // u = 0.6, prefix of measure 0.1: amplitude sqrt((1 - 0.9 * 0.36) / 0.1) = 2.6.
    const Control partial = complete_resource(sys, Control(constant(g, 1, 0.6), 2.0), tenth, kE1);
    CHECK(partial.values().at(0)[0] == doctest::Approx(2.6).epsilon(1e-12));
    CHECK(partial.values().at(50)[0] == 0.6);
    CHECK(partial.q_norm() == doctest::Approx(1.0).epsilon(1e-12));

    // r = 2, u = 1 off a half mask: amplitude sqrt((4 - 0.5) / 0.5) = sqrt(7).
    const DiscreteSystem wide = scalar_system(2.0, 100);
    const auto half = subset_by_measure(wide.grid(), 0.505, PrefixStrategy{});
    const Control seven = complete_resource(wide, Control(constant(wide.grid(), 1, 1.0), 2.0), half, kE1);
    CHECK(seven.values().at(0)[0] == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
    CHECK(seven.values().at(99)[0] == 1.0);

    // Already saturated off the mask: amplitude 0.
    GridFunction sat = constant(g, 1, 0.0);
    for (std::size_t i = 0; i < g->size(); ++i)
        if (!tenth.contains(i)) sat.at(i)[0] = 1.0 / std::sqrt(0.9);
    const Control edge = complete_resource(sys, Control(sat, 2.0), tenth, kE1);
    CHECK(std::abs(edge.values().at(0)[0]) <= 1e-6);
    CHECK(edge.q_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complete resource always lands on the sphere") {
    Rng rng(4242);
    for (const char* name : {"scalar-smooth", "planar"}) {
        const DiscreteSystem sys = default_system(name, name[0] == 'p' ? 10 : 80);
        const auto g = sys.grid();
        const double r = sys.problem().r;
        for (int trial = 0; trial < 500; ++trial) {
            const Control u = random_admissible(sys, rng.below(1u << 30), r * rng.uniform());
            auto mask = subset_by_measure(g, 0.05 + 0.9 * rng.uniform(), RandomStrategy{rng.below(1u << 30)});
            const Control v = complete_resource(sys, u, mask, kE1);
            CHECK(std::abs(v.q_norm() - r) <= 1e-10);
            for (std::size_t i = 0; i < g->size(); ++i)
                if (!mask.contains(i)) CHECK(v.values().at(i)[0] == u.values().at(i)[0]);
        }
    }
}

TEST_CASE("complete resource rejects bad input") {
    const DiscreteSystem sys = scalar_system(1.0, 50);
    const auto g = sys.grid();
    const Control u(GridFunction(g, 1), 2.0);
    const auto mask = subset_by_measure(g, 0.2, PrefixStrategy{});
    const double longer[] = {1.0, 0.0};
    const double not_unit[] = {0.5};
    CHECK_THROWS_AS(complete_resource(sys, u, subset_by_measure(g, 0.0, PrefixStrategy{}), kE1),
                    PreconditionError);
    CHECK_THROWS_AS(complete_resource(sys, u, mask, longer), PreconditionError);
    CHECK_THROWS_AS(complete_resource(sys, u, mask, not_unit), PreconditionError);
    CHECK_THROWS_AS(complete_resource(sys, Control(constant(g, 1, 2.0), 2.0), mask, kE1), TheoryViolation);
}

TEST_CASE("continuous surrogate of K2 at zero") {
    const DiscreteSystem sys = scalar_system(1.0, 200, {{"c2", 0.5}});
    const SurrogateKernel s = continuous_surrogate(sys, 0.1, 3.0);
    CHECK(s.m_eps == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(s.m_eps <= 0.5);
    CHECK(s.achieved_error <= s.error_budget);
    CHECK(s.error_budget == doctest::Approx(0.01 / 27.0));

    const DiscreteSystem flat = scalar_system(1.0, 50, {{"c2", 0.0}});
    CHECK(continuous_surrogate(flat, 0.1, 3.0).m_eps == 0.0);
}

TEST_CASE("delta* estimate") {
    const DiscreteSystem sys = default_system("scalar-smooth", 400);
    const Constants& c = sys.constants();
    const double cs = *c.c_star;

    double prev = INFINITY;
    for (double eps : {0.2, 0.1, 0.05}) {
        CAPTURE(eps);
        const DeltaStarEstimate est = estimate_delta_star(sys, eps, 16, 5);
        CHECK_FALSE(est.unconstrained);
        CHECK(est.cap == doctest::Approx(eps * eps / (3.0 * est.m_eps * est.m_eps * cs * cs)).epsilon(1e-12));
        CHECK(est.threshold_theta ==
              doctest::Approx(eps * eps / (3.0 * c.kappa2 * c.kappa2 * cs * cs)).epsilon(1e-12));
        CHECK(est.delta_star < est.cap);
        CHECK(est.delta_star <= est.empirical_delta);
        CHECK(est.delta_star >= sys.grid()->min_weight());
        CHECK(est.delta_star <= prev);
        prev = est.delta_star;

        // Fresh trajectories: the worst mask of measure delta* carries at most theta.
        const auto trajs = solve_controls(sys, sample_controls(sys, 16, 999, false));
        for (const Trajectory& t : trajs) {
            const auto mask = subset_by_measure(sys.grid(), est.delta_star, WorstForStrategy{&t.values, 2.0});
            CHECK(masked_mass(t.values, mask, 2.0) <= est.threshold_theta);
        }
    }
    const DeltaStarEstimate a = estimate_delta_star(sys, 0.1, 8, 3);
    const DeltaStarEstimate b = estimate_delta_star(sys, 0.1, 8, 3);
    CHECK(a.delta_star == b.delta_star);
}

TEST_CASE("delta* degenerate cases") {
    const ProblemSpec idle = ProblemSpec::make(make_family("scalar-smooth"), 0.0, 2.0, 1.0);
    const DiscreteSystem sys(idle, build_grid(idle.domain, 50));
    const DeltaStarEstimate est = estimate_delta_star(sys, 0.1, 4, 1);
    CHECK(est.unconstrained);
    CHECK(std::isinf(est.delta_star));

    const DiscreteSystem coarse = default_system("scalar-smooth", 4);
    CHECK_THROWS_AS(estimate_delta_star(coarse, 1e-3, 4, 1), GridTooCoarse);
    CHECK_THROWS_AS(estimate_delta_star(coarse, 0.0, 4, 1), PreconditionError);
}

TEST_CASE("worst prefix measure") {
    const auto g = build_grid(DomainSpec::interval(0.0, 1.0), 4);
    // masses w |x|^2 = 0.25 * {4, 1, 0, 9} -> worst order 3, 0, 1, 2.
    const GridFunction x(g, 1, {2.0, 1.0, 0.0, 3.0});
    CHECK(worst_prefix_measure(x, 2.0, 0.0) == 0.0);
    CHECK(worst_prefix_measure(x, 2.0, 2.25) == 0.25);
    CHECK(worst_prefix_measure(x, 2.0, 3.24) == 0.25);
    CHECK(worst_prefix_measure(x, 2.0, 3.25) == 0.5);
    CHECK(worst_prefix_measure(x, 2.0, 3.5) == 1.0);
    const auto mask = subset_by_measure(g, 0.5, WorstForStrategy{&x, 2.0});
    CHECK(masked_mass(x, mask, 2.0) == doctest::Approx(3.25));
}
