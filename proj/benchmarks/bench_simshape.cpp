#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "simshape/simshape.hpp"

using namespace simshape;

namespace {

void BM_KernelWeights(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ud(0.0, 5.0);
    std::vector<double> d(static_cast<std::size_t>(state.range(0)));
    for (double& v : d) v = ud(rng);
    const KernelSpec k{KernelKind::gaussian, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(kernel_weights(d, k));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KernelWeights)->Arg(64)->Arg(512)->Arg(4096);

void BM_PredictDay(benchmark::State& state) {
    SyntheticSpec spec;
    spec.days = static_cast<std::size_t>(state.range(0)) + 1;
    spec.seed = 3;
    const auto data = generate(spec);
    const auto& last = data.history.records().back();
    const auto past = data.history.before(last.meta.date);
    const TemperatureSegment forecast = *last.temperature;
    PredictorConfig cfg;
    cfg.kernel.bandwidth = 0.3;
    for (auto _ : state) benchmark::DoNotOptimize(predict_day(past, last.meta, forecast, std::nullopt, cfg));
}
BENCHMARK(BM_PredictDay)->Arg(56)->Arg(365)->Arg(1460);

void BM_ConsistencyExperiment(benchmark::State& state) {
    SyntheticSpec spec;
    spec.seed = 5;
    const std::vector<std::size_t> lengths{64, 128, 256, 512};
    for (auto _ : state) {
        benchmark::DoNotOptimize(consistency_experiment(spec, lengths, static_cast<std::size_t>(state.range(0)), {}));
    }
}
BENCHMARK(BM_ConsistencyExperiment)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
