#include <random>

#include <benchmark/benchmark.h>

#include "specbound/bounds.hpp"
#include "specbound/oracle.hpp"
#include "specbound/tensor.hpp"

namespace {

using specbound::DenseTensor;

DenseTensor random_symmetric(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  DenseTensor t = DenseTensor::cube(n, d);
  for (auto& v : t.data()) v = gauss(rng);
  return specbound::symmetrize(t);
}

void BM_Rho1(benchmark::State& state) {
  const auto f = specbound::to_poly(random_symmetric(3, 3, 1));
  const auto kmax = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specbound::rho1_bounds(f, kmax));
}
BENCHMARK(BM_Rho1)->Arg(8)->Arg(32);

void BM_Rho2(benchmark::State& state) {
  const auto f = specbound::to_poly(random_symmetric(static_cast<std::size_t>(state.range(0)), 3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(specbound::rho2_bounds(f, 3));
}
BENCHMARK(BM_Rho2)->Arg(2)->Arg(3);

void BM_MatrixBoundD3(benchmark::State& state) {
  const DenseTensor t = random_symmetric(static_cast<std::size_t>(state.range(0)), 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(specbound::matrix_bound_d3(t));
}
BENCHMARK(BM_MatrixBoundD3)->Arg(3)->Arg(6)->Arg(10);

void BM_CollatzWielandt(benchmark::State& state) {
  DenseTensor t = random_symmetric(static_cast<std::size_t>(state.range(0)), 4, 4);
  for (auto& v : t.data()) v = std::abs(v);
  for (auto _ : state) benchmark::DoNotOptimize(specbound::collatz_wielandt_bound(t));
}
BENCHMARK(BM_CollatzWielandt)->Arg(3)->Arg(6);

void BM_Shopm(benchmark::State& state) {
  const auto f = specbound::to_poly(random_symmetric(static_cast<std::size_t>(state.range(0)), 4, 5));
  for (auto _ : state) benchmark::DoNotOptimize(specbound::shopm_lower_bound(f));
}
BENCHMARK(BM_Shopm)->Arg(3)->Arg(8);

void BM_GridOracle(benchmark::State& state) {
  const auto f = specbound::to_poly(random_symmetric(static_cast<std::size_t>(state.range(0)), 3, 6));
  for (auto _ : state) benchmark::DoNotOptimize(specbound::grid_oracle(f));
}
BENCHMARK(BM_GridOracle)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
