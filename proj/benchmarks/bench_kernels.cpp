#include "projopt/angles.hpp"
#include "projopt/generators.hpp"
#include "projopt/productspace.hpp"
#include "projopt/projmethods.hpp"
#include "projopt/rng.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace projopt;

namespace {

std::vector<Subspace> family(Index n, int r)
{
    std::vector<Index> dims(static_cast<std::size_t>(r), n / 2);
    return generate_random(n, dims, 42, 1).linear_subspaces();
}

void BM_SpectralNorm(benchmark::State& state)
{
    const auto n = static_cast<Index>(state.range(0));
    Rng rng(1);
    const Matrix a = rng.gaussian(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_norm(a));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpectralNorm)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_Intersection(benchmark::State& state)
{
    const auto list = family(static_cast<Index>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(intersection(list));
    }
}
BENCHMARK(BM_Intersection)->ArgsProduct({{10, 30, 60}, {2, 5}});

void BM_FriedrichsGram(benchmark::State& state)
{
    const auto list = family(static_cast<Index>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(friedrichs_gram(list));
    }
}
BENCHMARK(BM_FriedrichsGram)->ArgsProduct({{10, 30, 60}, {2, 5}});

void BM_FriedrichsFromNorm(benchmark::State& state)
{
    const auto list = family(static_cast<Index>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(friedrichs_from_norm(list));
    }
}
BENCHMARK(BM_FriedrichsFromNorm)->ArgsProduct({{10, 30, 60}, {2, 5}});

void BM_ErrorOperatorNorm(benchmark::State& state)
{
    const auto list = family(30, 3);
    const IterOperator t = simultaneous_operator(list);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(error_operator_norm(t, k));
    }
}
BENCHMARK(BM_ErrorOperatorNorm)->Arg(1)->Arg(10)->Arg(100);

void BM_Iterate(benchmark::State& state)
{
    const auto list = family(static_cast<Index>(state.range(0)), 3);
    const IterOperator t = cyclic_operator(list);
    Rng rng(2);
    const Vector x0 = rng.unit_vector(t.dim());
    for (auto _ : state) {
        benchmark::DoNotOptimize(iterate(t, x0, 100));
    }
}
BENCHMARK(BM_Iterate)->Arg(10)->Arg(30)->Arg(60);

void BM_NormChain(benchmark::State& state)
{
    const auto list = family(static_cast<Index>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(norm_chain(list, 10));
    }
}
BENCHMARK(BM_NormChain)->ArgsProduct({{10, 30}, {2, 5}})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
