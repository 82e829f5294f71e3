#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "lrlssvm/solver.hpp"

namespace {

void BM_SolveFast(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const auto m = static_cast<Eigen::Index>(state.range(1));
    const auto data = bench::random_dataset(n, 5, 1);
    const auto phi = lrlssvm::feature_matrix(
        data.features, bench::random_kernel(m, 5, lrlssvm::Family::RobustRbf, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrlssvm::solve_fast(phi, data.labels, 100.0));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_SolveFast)
    ->ArgsProduct({{1000, 2000, 4000, 8000, 16000, 32000, 64000, 128000}, {5}})
    ->Complexity(benchmark::oN);
BENCHMARK(BM_SolveFast)->ArgsProduct({{20000}, {1, 2, 4, 8, 16}});

void BM_SolveDirect(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const auto data = bench::random_dataset(n, 5, 1);
    const auto phi = lrlssvm::feature_matrix(
        data.features, bench::random_kernel(5, 5, lrlssvm::Family::RobustRbf, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrlssvm::solve_direct(phi, data.labels, 100.0));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_SolveDirect)->RangeMultiplier(2)->Range(125, 2000)->Complexity(benchmark::oNCubed);

void BM_PredictScores(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const auto data = bench::random_dataset(n, 5, 3);
    lrlssvm::SparseModel model;
    model.kernel = bench::random_kernel(5, 5, lrlssvm::Family::Sbf, 4);
    model.theta = Eigen::VectorXd::Ones(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrlssvm::predict_scores(model, data.features));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PredictScores)->Arg(10000);

} // namespace
