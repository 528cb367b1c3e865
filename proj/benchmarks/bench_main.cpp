#include <benchmark/benchmark.h>

#include "morpho/anneal.hpp"
#include "morpho/blocks.hpp"
#include "morpho/generators.hpp"
#include "morpho/metrics.hpp"
#include "morpho/pattern_histogram.hpp"

namespace {

using namespace morpho;

Grid random_grid(std::size_t side, double p) {
  GenSpec spec;
  spec.width = spec.height = side;
  spec.p = p;
  return gen_random(spec);
}

void BM_WindowHistogram(benchmark::State& state) {
  const Grid g = random_grid(static_cast<std::size_t>(state.range(0)), 0.5);
  const ScanOptions opts{static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(window_histogram(g, opts).distinct());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_WindowHistogram)->Args({1000, 1})->Args({3000, 1})->Args({3000, 4})->Unit(benchmark::kMillisecond);

void BM_MeasureBlocks(benchmark::State& state) {
  const Grid g = random_grid(static_cast<std::size_t>(state.range(0)), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(measure_blocks(g).size());
}
BENCHMARK(BM_MeasureBlocks)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Permeability(benchmark::State& state) {
  const Grid g = random_grid(1000, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(permeability(g));
}
BENCHMARK(BM_Permeability)->Unit(benchmark::kMillisecond);

void BM_Dla(benchmark::State& state) {
  GenSpec spec;
  spec.kind = GenKind::kDla;
  spec.width = spec.height = 500;
  spec.particles = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gen_dla(spec).stuck);
}
BENCHMARK(BM_Dla)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Rrp(benchmark::State& state) {
  GenSpec spec;
  spec.kind = GenKind::kRrp;
  spec.width = spec.height = 100;
  spec.cells_to_place = 500;
  for (auto _ : state) benchmark::DoNotOptimize(gen_rrp(spec).placed);
}
BENCHMARK(BM_Rrp)->Unit(benchmark::kMillisecond);

void BM_AnnealSwap(benchmark::State& state) {
  EntropyTracker tracker(random_grid(256, 0.4));
  std::uint32_t i = 0;
  for (auto _ : state) {
    const Cell a{(i * 37) % 256, (i * 91) % 256};
    const Cell b{(i * 53) % 256, (i * 17) % 256};
    benchmark::DoNotOptimize(tracker.entropy_after_swap(a, b));
    ++i;
  }
}
BENCHMARK(BM_AnnealSwap);

}  // namespace

BENCHMARK_MAIN();
