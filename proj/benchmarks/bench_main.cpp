#include <benchmark/benchmark.h>

#include "etoff/certificate.hpp"
#include "etoff/noise_disturbance.hpp"
#include "etoff/sampling.hpp"

using namespace etoff;

namespace {

void BM_Eigh(benchmark::State& state) {
  const HermitianMatrix h(sample_hermitian(state.range(0), 1));
  for (auto _ : state) benchmark::DoNotOptimize(eigh(h));
}
BENCHMARK(BM_Eigh)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_BbarBound(benchmark::State& state) {
  const auto family = state.range(0) == 0 ? EntropyFamily::tsallis : EntropyFamily::renyi;
  for (auto _ : state) benchmark::DoNotOptimize(bbar_bound(0.6, 0.5, 2.0, family));
}
BENCHMARK(BM_BbarBound)->Arg(0)->Arg(1);

void BM_NoiseJoint(benchmark::State& state) {
  const Index d = state.range(0);
  const auto x = sample_random_observable(d, std::vector<int>(static_cast<std::size_t>(d), 1), 2);
  const auto m = sample_random_instrument(d, static_cast<std::size_t>(d), 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(noise_joint(x, m));
}
BENCHMARK(BM_NoiseJoint)->Arg(2)->Arg(3)->Arg(4);

void BM_Disturbance(benchmark::State& state) {
  const Index d = state.range(0);
  const auto z = sample_random_observable(d, std::vector<int>(static_cast<std::size_t>(d), 1), 4);
  const auto m = sample_random_instrument(d, static_cast<std::size_t>(state.range(1)), 2, 5);
  SearchConfig s;
  s.restarts = 2;
  for (auto _ : state) benchmark::DoNotOptimize(disturbance(z, m, EntropyOrder(1.0, EntropyFamily::shannon), s));
}
BENCHMARK(BM_Disturbance)->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
