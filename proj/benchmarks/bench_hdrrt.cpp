#include <benchmark/benchmark.h>

#include <random>

#include "hdrrt/energy.hpp"
#include "hdrrt/fusion.hpp"
#include "hdrrt/seam.hpp"
#include "hdrrt/strategies.hpp"

namespace {

using namespace hdrrt;

ImageStack noise_stack(std::size_t n, std::size_t w, std::size_t h) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> level(0, 255);
  std::vector<RgbImage> images;
  for (std::size_t i = 0; i < n; ++i) {
    RgbImage img(w, h);
    for (Rgb& p : img.values()) p = {level(rng) / 255.0, level(rng) / 255.0, level(rng) / 255.0};
    images.push_back(std::move(img));
  }
  return ImageStack(std::move(images));
}

void BM_GradientEnergy(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const LuminanceImage lum = to_luminance(noise_stack(1, side, side)[0]);
  for (auto _ : state) benchmark::DoNotOptimize(gradient_energy(lum));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(side * side));
}
BENCHMARK(BM_GradientEnergy)->Arg(256)->Arg(800);

void BM_FindMinSeam(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const EnergyMap e = image_energy(noise_stack(1, side, side)[0]);
  for (auto _ : state) benchmark::DoNotOptimize(find_min_seam(e));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(side * side));
}
BENCHMARK(BM_FindMinSeam)->Arg(256)->Arg(800);

void BM_FuseStack(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const ImageStack stack = noise_stack(3, side, side);
  for (auto _ : state) benchmark::DoNotOptimize(fuse_stack(stack, FusionConfig{}));
}
BENCHMARK(BM_FuseStack)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EvaluateStep(benchmark::State& state) {
  const auto strategy = static_cast<Strategy>(state.range(0));
  const ImageStack stack = noise_stack(3, 320, 240);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_step(strategy, stack.images()));
  state.SetLabel(std::string(to_string(strategy)));
}
BENCHMARK(BM_EvaluateStep)
    ->Arg(static_cast<int>(Strategy::stat_total))
    ->Arg(static_cast<int>(Strategy::agg_avg))
    ->Arg(static_cast<int>(Strategy::agg_laplacian))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
