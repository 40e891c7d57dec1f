#include <benchmark/benchmark.h>

#include "symp/ffield.hpp"
#include "symp/haar_oracle.hpp"
#include "symp/linstat.hpp"

namespace {

using symp::Partition;

const Partition kQuadPartition{{1, 2}, {2, 2}};

void BM_Quadrature(benchmark::State& state) {
  symp::QuadratureConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(symp::moment_quadrature(3, kQuadPartition, cfg));
}
void BM_QuadratureSerial(benchmark::State& state) {
  symp::QuadratureConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(symp::moment_quadrature_serial(3, kQuadPartition, cfg));
}

symp::MCConfig mc_config() {
  symp::MCConfig cfg;
  cfg.n = 8;
  cfg.sample_count = 20000;
  cfg.rng_seed = 5;
  return cfg;
}
const symp::SampleStatistic kTraceStat = [](const symp::EigenAngles& e) {
  return symp::trace_product(e, Partition{{1, 2}, {3, 1}});
};

void BM_MonteCarlo(benchmark::State& state) {
  const auto cfg = mc_config();
  for (auto _ : state) benchmark::DoNotOptimize(symp::mc_estimate(cfg, kTraceStat));
}
void BM_MonteCarloSerial(benchmark::State& state) {
  const auto cfg = mc_config();
  for (auto _ : state) benchmark::DoNotOptimize(symp::mc_estimate_serial(cfg, kTraceStat));
}

void BM_EmpiricalMoment(benchmark::State& state) {
  const symp::ff::PrimeField f(7);
  for (auto _ : state)
    benchmark::DoNotOptimize(symp::ff::empirical_moment(f, 1, Partition{{1, 2}, {2, 1}}, symp::ff::QMode::AllPrimePowers));
}
void BM_EmpiricalMomentSerial(benchmark::State& state) {
  const symp::ff::PrimeField f(7);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        symp::ff::empirical_moment_serial(f, 1, Partition{{1, 2}, {2, 1}}, symp::ff::QMode::AllPrimePowers));
}

void BM_DistinctPrimeSums(benchmark::State& state) {
  const symp::ff::PrimeField f(5);
  for (auto _ : state) benchmark::DoNotOptimize(symp::ff::distinct_prime_sums(f, 1, Partition{{1, 2}, {2, 1}}));
}
void BM_DistinctPrimeSumsSerial(benchmark::State& state) {
  const symp::ff::PrimeField f(5);
  for (auto _ : state) benchmark::DoNotOptimize(symp::ff::distinct_prime_sums_serial(f, 1, Partition{{1, 2}, {2, 1}}));
}

symp::FourierTestFn test_fn() { return symp::parse_fourier("0:1 1:1/2 2:1/4"); }

void BM_LinstatExact(benchmark::State& state) {
  const auto f = test_fn();
  for (auto _ : state) benchmark::DoNotOptimize(symp::w_moment_exact(40, 20, 4, f));
}
void BM_LinstatExactSerial(benchmark::State& state) {
  const auto f = test_fn();
  for (auto _ : state) benchmark::DoNotOptimize(symp::w_moment_exact_serial(40, 20, 4, f));
}

}  // namespace

BENCHMARK(BM_Quadrature)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadratureSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EmpiricalMoment)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EmpiricalMomentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistinctPrimeSums)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistinctPrimeSumsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinstatExact)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinstatExactSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
