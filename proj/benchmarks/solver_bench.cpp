#include <benchmark/benchmark.h>

#include "repower/philox.hpp"
#include "repower/simlab.hpp"
#include "repower/solver.hpp"

using namespace repower;

namespace {

std::vector<AlternativeSet> instances(std::size_t m, std::size_t count)
{
    const double upper = m == 2 ? 6.0 : 3.0;
    std::vector<AlternativeSet> out;
    for (std::size_t k = 0; k < count; ++k) {
        StreamRng rng(2024, k);
        AlternativeSet a;
        for (std::size_t i = 0; i < m; ++i) {
            a.indices.push_back(i);
            a.means.push_back(upper * rng.uniform());
        }
        out.push_back(std::move(a));
    }
    return out;
}

template <SolveReport (*Solve)(const AlternativeSet&, const ProblemSpec&, const SolverConfig&)>
void BM_solver(benchmark::State& state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto set = instances(m, 64);
    const ProblemSpec spec(m, 0.05);
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Solve(set[k++ % set.size()], spec, {}));
    }
}

void BM_scenario(benchmark::State& state)
{
    ScenarioSpec s;
    s.theta1 = family_means(Family::two_zero_three_theta, 2.0).means;
    s.reps = 1000;
    s.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.reps));
}

}  // namespace

BENCHMARK(BM_solver<solve_fixed_point>)->Name("fixed_point")->DenseRange(2, 6);
BENCHMARK(BM_solver<solve_grid>)->Name("grid")->DenseRange(2, 3);
BENCHMARK(BM_solver<solve_multistart>)->Name("multistart")->DenseRange(2, 5);
BENCHMARK(BM_scenario)->Name("scenario_1000_reps")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
