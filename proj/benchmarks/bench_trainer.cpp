#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "lrlssvm/init.hpp"
#include "lrlssvm/trainer.hpp"

namespace {

// One alternating sweep costs O(M^2 N + M N D).
void BM_FitFromKernel(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const auto data = bench::random_dataset(n, 5, 5);
    const auto kernel = bench::random_kernel(5, 5, lrlssvm::Family::RobustRbf, 6);
    lrlssvm::TrainConfig cfg;
    cfg.num_units = 5;
    cfg.iterations = 10;
    cfg.eta = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrlssvm::fit_from_kernel(data, kernel, cfg));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_FitFromKernel)
    ->RangeMultiplier(2)
    ->Range(2000, 32000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

void BM_KMedoids(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const auto data = bench::random_dataset(n, 2, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrlssvm::kmedoids(data.features, 3, 1));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_KMedoids)->RangeMultiplier(2)->Range(250, 2000)->Complexity(benchmark::oNSquared);

} // namespace
