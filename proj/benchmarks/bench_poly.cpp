#include <random>

#include <benchmark/benchmark.h>

#include "specbound/poly.hpp"

namespace {

using specbound::HomoPoly;
using specbound::MultiIndex;

// Dense random polynomial: every monomial of degree p in n variables.
HomoPoly dense_poly(std::size_t n, unsigned p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<std::pair<MultiIndex, double>> terms;
  std::vector<std::uint32_t> j(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      j[i] = left;
      terms.emplace_back(MultiIndex(j), gauss(rng));
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      j[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, p);
  return HomoPoly::from_terms(n, p, std::move(terms));
}

void BM_Multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<unsigned>(state.range(1));
  const HomoPoly f = dense_poly(n, p, 1);
  const HomoPoly g = dense_poly(n, p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(specbound::multiply(f, g));
  state.SetLabel(std::to_string(f.num_terms()) + " x " + std::to_string(g.num_terms()) + " terms");
}
BENCHMARK(BM_Multiply)->Args({3, 4})->Args({5, 4})->Args({8, 3})->Args({40, 2});

void BM_Power(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const HomoPoly f = dense_poly(3, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(specbound::power(f, k));
}
BENCHMARK(BM_Power)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_HsNorm(benchmark::State& state) {
  const HomoPoly f = specbound::power(dense_poly(3, 3, 4), static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(specbound::hs_norm(f));
  state.SetLabel(std::to_string(f.num_terms()) + " terms");
}
BENCHMARK(BM_HsNorm)->Arg(4)->Arg(16);

void BM_ComposeMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const specbound::PolyMap F = specbound::gradient_map(dense_poly(n, 3, 5));
  const specbound::PolyMap G = specbound::compose_map(F, F);
  for (auto _ : state) benchmark::DoNotOptimize(specbound::compose_map(F, G));
}
BENCHMARK(BM_ComposeMap)->Arg(2)->Arg(3);

}  // namespace
