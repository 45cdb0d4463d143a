#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "pansphere/depth_norm.hpp"
#include "pansphere/losses.hpp"
#include "pansphere/metrics.hpp"
#include "pansphere/representations.hpp"
#include "pansphere/warp.hpp"

using namespace pansphere;

namespace {

constexpr int kHeight = 504;

ErpImage random_image(int h, int channels) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  ErpImage img(h, 2 * h, channels);
  for (auto& v : img.pixels.data()) v = d(rng);
  return img;
}

DepthMap random_depth(int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.5, 10.0);
  DepthMap out(h, 2 * h);
  for (auto& v : out.values.data()) v = d(rng);
  return out;
}

}  // namespace

static void BM_SourceMap(benchmark::State& state) {
  const ErpGrid grid = ErpGrid::with_height(kHeight);
  const WarpSpec spec{compose(mobius_zoom(1.3), mobius_rotation(0.4))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_source_map(grid, spec, 1));
  }
  state.SetItemsProcessed(state.iterations() * grid.height * grid.width);
}
BENCHMARK(BM_SourceMap)->Unit(benchmark::kMillisecond);

static void BM_WarpErpRgb(benchmark::State& state) {
  const ErpImage img = random_image(kHeight, 3);
  const WarpSpec spec{compose(mobius_zoom(1.3), mobius_rotation(0.4))};
  const auto jobs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(warp_erp(img, spec, jobs));
  }
  state.SetItemsProcessed(state.iterations() * img.rows() * img.cols());
}
BENCHMARK(BM_WarpErpRgb)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_CubemapRoundTrip(benchmark::State& state) {
  const ErpImage img = random_image(kHeight, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(patchset_to_erp(erp_to_cubemap(img)));
  }
}
BENCHMARK(BM_CubemapRoundTrip)->Unit(benchmark::kMillisecond);

static void BM_NormalizeDepth(benchmark::State& state) {
  const DepthMap d = random_depth(kHeight, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize_depth(d));
  }
}
BENCHMARK(BM_NormalizeDepth)->Unit(benchmark::kMillisecond);

static void BM_ComputeMetrics(benchmark::State& state) {
  const DepthMap pred = random_depth(kHeight, 3);
  const DepthMap gt = random_depth(kHeight, 4);
  const MetricOptions options{10.0, state.range(0) ? std::optional(AlignmentSpace::Depth)
                                                   : std::nullopt};
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_metrics(pred, gt, options));
  }
}
BENCHMARK(BM_ComputeMetrics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_EpnlLoss(benchmark::State& state) {
  const DepthMap pred = random_depth(kHeight, 5);
  const DepthMap gt = random_depth(kHeight, 6);
  const auto patches = sample_equator_patches(SamplerConfig{}, ErpGrid::of(gt.values));
  for (auto _ : state) {
    benchmark::DoNotOptimize(epnl_loss(pred, gt, patches));
  }
}
BENCHMARK(BM_EpnlLoss)->Unit(benchmark::kMillisecond);

static void BM_SupervisedLoss(benchmark::State& state) {
  const DepthMap pred = random_depth(kHeight, 7);
  const DepthMap gt = random_depth(kHeight, 8);
  const auto patches = sample_equator_patches(SamplerConfig{}, ErpGrid::of(gt.values));
  for (auto _ : state) {
    benchmark::DoNotOptimize(supervised_loss(pred, gt, patches));
  }
}
BENCHMARK(BM_SupervisedLoss)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
