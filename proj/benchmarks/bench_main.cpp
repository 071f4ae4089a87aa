#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "rmt/ensembles.hpp"
#include "rmt/hermite.hpp"
#include "rmt/kernels.hpp"

namespace {

void BM_HermiteRecurrence(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const rmt::Complex x(0.3 * std::sqrt(2.0 * N), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::phi_pair(x, N).upper_value());
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_HermiteRecurrence)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oN);

void BM_KernelCD(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const rmt::KernelQuery q{0.4, -0.9, N, rmt::Complex(1.0 / N, 0.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::kernel_cd(q));
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_KernelCD)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oN);

void BM_Eigenvalues(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const rmt::HermitianMatrix m = rmt::gue_sample(N, 1.0 / N, rmt::RngStream{1, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::eigenvalues(m).values.data());
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_Eigenvalues)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_Sampler(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto ensemble = state.range(1) == 0 ? rmt::Ensemble::gue : rmt::Ensemble::hse;
  rmt::RandomEngine rng(rmt::RngStream{2, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::sample(ensemble, N, 1.0 / N, rng).trace());
  }
  state.SetLabel(std::string(rmt::to_string(ensemble)));
}
BENCHMARK(BM_Sampler)->ArgsProduct({{16, 100, 400}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
