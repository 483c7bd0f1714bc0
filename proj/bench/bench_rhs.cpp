// Parallel tabulated Nystrom operator vs the serial pointwise reference.
#include <benchmark/benchmark.h>

#include "urysohn/controls.hpp"
#include "urysohn/nystrom.hpp"
#include "urysohn/solver.hpp"

using namespace urysohn;

namespace {

struct Fixture {
    explicit Fixture(std::size_t cells, const char* family = "scalar-smooth")
        : problem(default_problem(family)),
          sys(problem, build_grid(problem.domain, cells)),
          u(random_admissible(sys, 7, 0.5)),
          x(sys.grid(), problem.n) {
        for (std::size_t i = 0; i < x.size(); ++i)
            for (double& v : x.at(i)) v = 0.3 + 0.001 * static_cast<double>(i % 17);
    }
    ProblemSpec problem;
    DiscreteSystem sys;
    Control u;
    GridFunction x;
};

void BM_RhsParallel(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_rhs(f.sys, f.x, f.u.values()));
}

void BM_RhsReference(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_rhs_reference(f.problem, f.x, f.u.values()));
}

void BM_Assemble(benchmark::State& state) {
    const ProblemSpec problem = default_problem("scalar-smooth");
    const GridPtr grid = build_grid(problem.domain, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(DiscreteSystem(problem, grid));
}

void BM_Solve(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_trajectory(f.sys, f.u.values()));
}

}  // namespace

BENCHMARK(BM_RhsParallel)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RhsReference)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Assemble)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
