#include "rectcart/experiment.hpp"
#include "rectcart/generators.hpp"
#include "rectcart/hamiltonian.hpp"
#include "rectcart/octo_layout.hpp"
#include "rectcart/orders.hpp"
#include "rectcart/relax.hpp"

#include <benchmark/benchmark.h>

using namespace rectcart;

namespace {

void canonical(benchmark::State &state)
{
    const auto g = random_triangulation(static_cast<int>(state.range(0)), 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_order(g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(canonical)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

// order, realizer, T-contacts and octagons, all exact
void pipeline(benchmark::State &state)
{
    const auto g = random_triangulation(static_cast<int>(state.range(0)), 12);
    for (auto _ : state)
        benchmark::DoNotOptimize(schnyder_pipeline(g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(pipeline)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void relax_to_one_percent(benchmark::State &state)
{
    const auto cases = bench_cases({static_cast<int>(state.range(0))}, 1, 10, 100, 13);
    const auto seed = bench_seed(cases.front());
    long steps = 0;
    for (auto _ : state) {
        const auto r = relax(seed, cases.front().weights);
        steps = r.second.iterations;
        benchmark::DoNotOptimize(r);
    }
    state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(relax_to_one_percent)->DenseRange(10, 50, 20)->Unit(benchmark::kMillisecond);

void hamiltonian_double(benchmark::State &state)
{
    const auto h = stacked_fans(static_cast<int>(state.range(0)));
    const auto split = split_left_right(h.graph, h.cycle);
    const auto n = static_cast<std::size_t>(h.graph.size());
    const std::vector<double> w(n, 1.0);
    const double side = std::sqrt(static_cast<double>(n));
    for (auto _ : state)
        benchmark::DoNotOptimize(ham_cartogram<double>(split, w, side, side));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(hamiltonian_double)
    ->RangeMultiplier(2)
    ->Range(10000, 80000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

void hamiltonian_exact(benchmark::State &state)
{
    const auto h = random_hamiltonian(static_cast<int>(state.range(0)), 14);
    const auto inst =
        make_instance(h.graph, std::vector<Rational>(static_cast<std::size_t>(h.graph.size()), Rational(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(ham_cartogram(inst, h.cycle));
}
BENCHMARK(hamiltonian_exact)->RangeMultiplier(4)->Range(16, 1024);

} // namespace

BENCHMARK_MAIN();
