#include <benchmark/benchmark.h>

#include "bpd/content.hpp"
#include "bpd/oscillation.hpp"
#include "bpd/presets.hpp"
#include "bpd/series.hpp"
#include "bpd/witness.hpp"

namespace {

using namespace bpd;

void CriterionHarmonic(benchmark::State& state) {
    const RegionSpec region = preset_region("roadrunner-harmonic");
    const CriterionQuery query{region, 1, 1.0, static_cast<int>(state.range(0)), 10};
    for (auto _ : state) {
        SeriesReport report = evaluate_numeric(query);
        benchmark::DoNotOptimize(report.partial_sum_upper);
    }
}
BENCHMARK(CriterionHarmonic)->Arg(16)->Arg(64)->Arg(1024);

void DyadicCoverTwoDisks(benchmark::State& state) {
    const std::vector<Disk> disks{{Complex{0.31, 0.12}, 0.1}, {Complex{-0.2, 0.05}, 0.05}};
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto cover = dyadic_cover(disks, level);
        benchmark::DoNotOptimize(cover.size());
    }
}
BENCHMARK(DyadicCoverTwoDisks)->Arg(4)->Arg(6)->Arg(8);

void ContentIntervalTwoDisks(benchmark::State& state) {
    const std::vector<Disk> disks{{Complex{0.31, 0.12}, 0.1}, {Complex{-0.2, 0.05}, 0.05}};
    for (auto _ : state) {
        ContentEstimate est = content_interval(disks, 1.0, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(est.upper);
    }
}
BENCHMARK(ContentIntervalTwoDisks)->Arg(6)->Arg(8);

void MeanOscillationSmooth(benchmark::State& state) {
    SampledFunction f;
    f.eval = [](Complex z) { return z * z; };
    const Cube q{Complex{0.25, 0.25}, 0.5};
    const int nodes = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mean_oscillation(f, q, nodes));
    }
}
BENCHMARK(MeanOscillationSmooth)->Arg(16)->Arg(64)->Arg(128);

void CauchyTransformCircle(benchmark::State& state) {
    const Disk disk{Complex{0.1875, 0.0}, 1.0 / 32.0};
    const DiscreteMeasure measure =
        frostman_on_circle(disk, 0.5, static_cast<int>(state.range(0)));
    const Complex z{0.01, 0.02};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cauchy_transform(measure, 1, z));
    }
}
BENCHMARK(CauchyTransformCircle)->Arg(256)->Arg(1024);

void BuildWitnessBlock(benchmark::State& state) {
    const RegionSpec region = preset_region("roadrunner-harmonic");
    const int start = static_cast<int>(state.range(0));
    for (auto _ : state) {
        BlockWitness block = build_block(region, 1, start, {}, 64);
        benchmark::DoNotOptimize(block.block_sum);
    }
}
BENCHMARK(BuildWitnessBlock)->Arg(1)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
