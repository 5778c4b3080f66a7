// Serial reference against OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include "tprice/kernels.hpp"
#include "tprice/scenario.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace tprice;

namespace {

SamplerSpec spec_for(int family, int divisions) {
    auto spec = family == 0 ? SamplerSpec::preset_power(1) : SamplerSpec::preset_quadratic(1);
    spec.m = divisions;
    spec.n = divisions;
    return spec;
}

PriceVector mid_price(int d) { return PriceVector::Constant(d, 1.5); }

void BM_Evaluate(benchmark::State& state, kernels::Exec exec) {
    const auto inst = ScenarioStream(spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)))).next();
    const auto lam = mid_price(inst.dim());
    for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate(inst, lam, exec));
    state.SetItemsProcessed(state.iterations() * (inst.m() + inst.n()));
}

void BM_PoolMeanExcess(benchmark::State& state, kernels::Exec exec) {
    ScenarioStream stream(spec_for(static_cast<int>(state.range(0)), 25));
    std::vector<FirmInstance> pool;
    for (long i = 0; i < state.range(1); ++i) pool.push_back(stream.next());
    const auto lam = mid_price(pool.front().dim());
    for (auto _ : state) benchmark::DoNotOptimize(kernels::pool_mean_excess(pool, lam, exec));
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_EvaluateBatch(benchmark::State& state, bool parallel) {
    const auto inst = ScenarioStream(spec_for(static_cast<int>(state.range(0)), 25)).next();
    std::vector<PriceVector> prices;
    for (long i = 0; i < state.range(1); ++i)
        prices.push_back(PriceVector::Constant(inst.dim(), 0.01 * static_cast<double>(i)));
    for (auto _ : state) {
        if (parallel)
            benchmark::DoNotOptimize(kernels::evaluate_batch_parallel(inst, prices));
        else
            benchmark::DoNotOptimize(kernels::evaluate_batch_serial(inst, prices));
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

// Args: {family (0 power, 1 quadratic), size}
const std::vector<std::vector<long>> kDivisions = {{0, 1}, {64, 1024}};
const std::vector<std::vector<long>> kPool = {{0, 1}, {16, 1024}};

}  // namespace

BENCHMARK_CAPTURE(BM_Evaluate, serial, kernels::Exec::Serial)->ArgsProduct(kDivisions);
BENCHMARK_CAPTURE(BM_Evaluate, parallel, kernels::Exec::Parallel)->ArgsProduct(kDivisions);
BENCHMARK_CAPTURE(BM_PoolMeanExcess, serial, kernels::Exec::Serial)->ArgsProduct(kPool);
BENCHMARK_CAPTURE(BM_PoolMeanExcess, parallel, kernels::Exec::Parallel)->ArgsProduct(kPool);
BENCHMARK_CAPTURE(BM_EvaluateBatch, serial, false)->ArgsProduct(kPool);
BENCHMARK_CAPTURE(BM_EvaluateBatch, parallel, true)->ArgsProduct(kPool);

BENCHMARK_MAIN();
