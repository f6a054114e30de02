#include <random>

#include <benchmark/benchmark.h>

#include <tubal/tubal.hpp>

using namespace tubal;

namespace {

DenseTensor3 gaussian(Dims dims, std::uint64_t seed)
{
  auto engine = RngSeed{seed, "bench"}.engine();
  return gaussian_tensor(dims, engine);
}

void BM_Tprod(benchmark::State& state)
{
  Index const n = state.range(0);
  Index const k = state.range(1);
  DenseTensor3 const a = gaussian({n, n, k}, 1);
  DenseTensor3 const b = gaussian({n, n, k}, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tprod(a, b));
  }
}
BENCHMARK(BM_Tprod)->Args({25, 10})->Args({50, 10})->Args({100, 10})->Args({50, 40})->Unit(benchmark::kMillisecond);

void BM_LsSolveY(benchmark::State& state)
{
  Index const n = state.range(0);
  Index const r = state.range(1);
  SyntheticInstance const inst = synth_low_tubal_rank({n, n, 10}, r, {3, "bench"});
  SampleSet const omega = sample_bernoulli(inst.tensor.dims(), 0.5, {3, "omega"});
  DenseTensor3 const observed = project(inst.tensor, omega);
  DenseTensor3 const x = qr_tensor(gaussian({n, r, 10}, 4)).q;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ls_solve_y(observed, omega, x));
  }
}
BENCHMARK(BM_LsSolveY)->Args({25, 3})->Args({50, 3})->Args({100, 3})->Args({50, 6})->Unit(benchmark::kMillisecond);

void BM_Svt(benchmark::State& state)
{
  Index const n = state.range(0);
  DenseTensor3 const t = gaussian({n, n, 10}, 5);
  double const eps = 0.1 * spectral_norm(t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(svt(t, eps));
  }
}
BENCHMARK(BM_Svt)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_AltMinIteration(benchmark::State& state)
{
  Index const n = state.range(0);
  SyntheticInstance const inst = synth_low_tubal_rank({n, n, 10}, 3, {6, "bench"});
  SampleSet const omega = sample_bernoulli(inst.tensor.dims(), 0.5, {6, "omega"});
  DenseTensor3 const observed = project(inst.tensor, omega);
  SolverConfig cfg;
  cfg.rank = 3;
  cfg.iterations = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tubal_alt_min(observed, omega, cfg));
  }
}
BENCHMARK(BM_AltMinIteration)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_AdmmIteration(benchmark::State& state)
{
  Index const n = state.range(0);
  SyntheticInstance const inst = synth_low_tubal_rank({n, n, 10}, 3, {7, "bench"});
  SampleSet const omega = sample_bernoulli(inst.tensor.dims(), 0.5, {7, "omega"});
  DenseTensor3 const observed = project(inst.tensor, omega);
  AdmmConfig cfg;
  cfg.max_iters = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(admm_complete(observed, omega, cfg));
  }
}
BENCHMARK(BM_AdmmIteration)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
