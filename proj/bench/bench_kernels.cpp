#include <benchmark/benchmark.h>

#include <vector>

#include "qhe/kernels.hpp"

namespace {

using namespace qhe;

const std::vector<double>& alphas() {
  static const auto g = kernels::linear_grid(1.0, 10.0, 64);
  return g;
}
const std::vector<double> kNphi{3.0, 5.0, 10.0, 30.0, 100.0};

void BM_IsoSweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::iso_sweep(kNphi, alphas()));
}
void BM_IsoSweepOmp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::iso_sweep(kNphi, alphas()));
}

std::vector<CarnotSpec> carnot_specs() {
  std::vector<CarnotSpec> specs;
  for (double r : kernels::linear_grid(0.1, 0.9, 16)) {
    CarnotSpec s;
    s.b1 = FieldPoint(2.0);
    s.b2 = FieldPoint(1.0);
    s.T_hot = 2.0;
    s.T_cold = 2.0 * r;
    specs.push_back(s);
  }
  return specs;
}

void BM_CarnotSerial(benchmark::State& state) {
  const auto specs = carnot_specs();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::carnot_sweep(specs));
}
void BM_CarnotOmp(benchmark::State& state) {
  const auto specs = carnot_specs();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::carnot_sweep(specs));
}

void BM_MagnetizationSerial(benchmark::State& state) {
  const auto b = kernels::linear_grid(0.0, 10.0, 2001);
  const std::vector<double> t{0.25, 0.5, 1.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::magnetization_grid(b, t, PhysicalParams::dimensionless()));
  }
}
void BM_MagnetizationOmp(benchmark::State& state) {
  const auto b = kernels::linear_grid(0.0, 10.0, 2001);
  const std::vector<double> t{0.25, 0.5, 1.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::magnetization_grid(b, t, PhysicalParams::dimensionless()));
  }
}

}  // namespace

BENCHMARK(BM_IsoSweepSerial);
BENCHMARK(BM_IsoSweepOmp);
BENCHMARK(BM_CarnotSerial);
BENCHMARK(BM_CarnotOmp);
BENCHMARK(BM_MagnetizationSerial);
BENCHMARK(BM_MagnetizationOmp);

BENCHMARK_MAIN();
