#include <doctest.h>

#include <cmath>
#include <numbers>

#include "urysohn/errors.hpp"
#include "urysohn/grid.hpp"
#include "urysohn/seed.hpp"

using namespace urysohn;

namespace {

GridFunction sampled(const GridPtr& g, double (*fn)(double)) {
    GridFunction out(g, 1);
    for (std::size_t i = 0; i < g->size(); ++i) out.at(i)[0] = fn(g->node(i)[0]);
    return out;
}

GridFunction random_fn(const GridPtr& g, std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    GridFunction out(g, dim);
    for (double& v : out.values()) v = rng.uniform(-2.0, 2.0);
    return out;
}

}  // namespace

TEST_CASE("midpoint grid on the unit interval") {
    const auto g = build_grid(DomainSpec::interval(0.0, 1.0), 4);
    REQUIRE(g->size() == 4);
    const double expected[] = {0.125, 0.375, 0.625, 0.875};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(g->node(i)[0] == expected[i]);
        CHECK(g->weight(i) == 0.25);
    }
}

TEST_CASE("weights sum to the interval length") {
    const auto g = build_grid(DomainSpec::interval(0.0, 2.0), 8);
    double s = 0.0;
    for (double w : g->weights()) s += w;
    CHECK(s == 2.0);
    CHECK(g->total_measure() == 2.0);
}

TEST_CASE("tensor grid on the unit square") {
    const auto g = build_grid(DomainSpec::rectangle(0.0, 1.0, 0.0, 1.0), 3);
    REQUIRE(g->size() == 9);
    double s = 0.0;
    for (double w : g->weights()) {
        CHECK(w == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
        s += w;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    // x-major ordering
    CHECK(g->node(1)[0] == doctest::Approx(1.0 / 6.0));
    CHECK(g->node(1)[1] == doctest::Approx(0.5));
}

TEST_CASE("grid invariants for assorted domains") {
    const DomainSpec domains[] = {DomainSpec::interval(-1.5, 2.25), DomainSpec::interval(0.0, 1e-3),
                                  DomainSpec::rectangle(-1.0, 3.0, 0.5, 0.75)};
    for (const auto& d : domains) {
        for (std::size_t cells : {1u, 7u, 64u}) {
            const auto g = build_grid(d, cells);
            double s = 0.0;
            for (std::size_t i = 0; i < g->size(); ++i) {
                CHECK(g->weight(i) > 0.0);
                s += g->weight(i);
                for (std::size_t a = 0; a < d.dimension(); ++a) {
                    CHECK(g->node(i)[a] > d.lower[a]);
                    CHECK(g->node(i)[a] < d.upper[a]);
                }
            }
            CHECK(std::abs(s - d.measure()) <= 1e-12 * d.measure());
        }
    }
}

TEST_CASE("grid construction errors") {
    CHECK_THROWS_AS(DomainSpec::interval(1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(DomainSpec::interval(0.0, INFINITY), PreconditionError);
    CHECK_THROWS_AS(DomainSpec::rectangle(0.0, 1.0, 2.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(build_grid(DomainSpec::interval(0.0, 1.0), 0), PreconditionError);
}

TEST_CASE("lp_norm closed forms") {
    const auto g = build_grid(DomainSpec::interval(0.0, 1.0), 1000);
    CHECK(lp_norm(sampled(g, [](double) { return 1.0; }), 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lp_norm(GridFunction(g, 2), 3.5) == 0.0);
    // int_0^1 xi^2 = 1/3
    CHECK(std::abs(lp_norm(sampled(g, [](double x) { return x; }), 2.0) - std::sqrt(1.0 / 3.0)) < 1e-4);
    CHECK_THROWS_AS(lp_norm(GridFunction(g, 1), 1.0), PreconditionError);
}

TEST_CASE("integrate_vector") {
    const auto g = build_grid(DomainSpec::interval(0.0, 1.0), 1000);
    GridFunction c(g, 2);
    for (std::size_t i = 0; i < g->size(); ++i) {
        c.at(i)[0] = 1.0;
        c.at(i)[1] = 2.0;
    }
    const auto v = integrate_vector(c);
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(v[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate_vector(GridFunction(g, 3)) == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(std::abs(integrate_vector(sampled(g, [](double x) { return x; }))[0] - 0.5) < 1e-6);
}

TEST_CASE("lp_norm homogeneity and triangle inequality") {
    const GridPtr grids[] = {build_grid(DomainSpec::interval(0.0, 1.0), 50),
                             build_grid(DomainSpec::rectangle(0.0, 2.0, -1.0, 1.0), 9)};
    Rng rng(42);
    for (const auto& g : grids) {
        for (int trial = 0; trial < 200; ++trial) {
            const double p = 1.05 + 4.0 * rng.uniform();
            const auto f = random_fn(g, 2, rng.below(1u << 30));
            const auto h = random_fn(g, 2, rng.below(1u << 30));
            const double c = rng.uniform(-5.0, 5.0);
            const double nf = lp_norm(f, p);
            CHECK(std::abs(lp_norm(c * f, p) - std::abs(c) * nf) <= 1e-12 * std::abs(c) * nf);
            CHECK(lp_norm(f + h, p) <= nf + lp_norm(h, p) + 1e-12);
        }
    }
}

TEST_CASE("lp_norm converges under refinement") {
    // int_0^1 exp(xi)^3 = (e^3 - 1) / 3
    const double exact = std::cbrt((std::exp(3.0) - 1.0) / 3.0);
    double prev = INFINITY;
    for (std::size_t n : {100u, 200u, 400u, 800u}) {
        const auto g = build_grid(DomainSpec::interval(0.0, 1.0), n);
        const double err = std::abs(lp_norm(sampled(g, [](double x) { return std::exp(x); }), 3.0) - exact);
        CHECK(err <= 1.05 * prev);
        prev = err;
    }
}

TEST_CASE("subset_by_measure edge cases") {
    const auto g = build_grid(DomainSpec::interval(0.0, 1.0), 10);
    const auto empty = subset_by_measure(g, 0.0, PrefixStrategy{});
    CHECK(empty.count() == 0);
    CHECK(empty.measure() == 0.0);

    const auto full = subset_by_measure(g, g->total_measure(), PrefixStrategy{});
    CHECK(full.count() == 10);

    const auto quarter = subset_by_measure(g, 0.25, PrefixStrategy{});
    CHECK(quarter.count() == 2);
    CHECK(quarter.contains(0));
    CHECK(quarter.contains(1));
    CHECK(quarter.measure() == doctest::Approx(0.2).epsilon(1e-15));

    CHECK_THROWS_AS(subset_by_measure(g, -0.1, PrefixStrategy{}), PreconditionError);
}

TEST_CASE("worst_for picks the heaviest cells") {
    const auto g = build_grid(DomainSpec::interval(0.0, 1.0), 10);
    const auto f = sampled(g, [](double x) { return x; });
    // 0.1 + 0.1 + 0.1 rounds above 0.3, so ask for a little more.
    const auto m = subset_by_measure(g, 0.35, WorstForStrategy{&f, 2.0});
    CHECK(m.count() == 3);
    CHECK(m.contains(9));
    CHECK(m.contains(8));
    CHECK(m.contains(7));
}

TEST_CASE("subset measure property") {
    const auto g = build_grid(DomainSpec::rectangle(0.0, 1.0, 0.0, 2.0), 12);
    const auto f = random_fn(g, 1, 3);
    Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const double t = rng.uniform(0.0, 0.999 * g->total_measure());
        const SubsetMask masks[] = {subset_by_measure(g, t, PrefixStrategy{}),
                                    subset_by_measure(g, t, RandomStrategy{rng.below(1000)}),
                                    subset_by_measure(g, t, WorstForStrategy{&f, 1.5})};
        for (const auto& m : masks) {
            CHECK(m.measure() <= t);
            // adding one more cell would overshoot
            CHECK(m.measure() + g->min_weight() > t);
            double s = 0.0;
            for (std::size_t i = 0; i < g->size(); ++i)
                if (m.contains(i)) s += g->weight(i);
            CHECK(s == m.measure());
        }
    }
}

TEST_CASE("random strategy is seed-deterministic") {
    const auto g = build_grid(DomainSpec::interval(0.0, 1.0), 40);
    const auto a = subset_by_measure(g, 0.3, RandomStrategy{5});
    const auto b = subset_by_measure(g, 0.3, RandomStrategy{5});
    const auto c = subset_by_measure(g, 0.3, RandomStrategy{6});
    CHECK(a.included() == b.included());
    CHECK(a.included() != c.included());
}
