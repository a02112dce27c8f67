#include <benchmark/benchmark.h>

#include "cy3/anomaly_checker.hpp"
#include "cy3/geometry_catalog.hpp"

namespace {

using namespace cy3;

DivisorClass ample_polarization(const Geometry& g) {
  // sigma + pi*(3 c1), nudged where c1 is only nef on the base.
  std::vector<Rational> h{Rational(1)};
  for (std::size_t i = 1; i < g.picard_rank(); ++i) h.push_back(g.c2X()[i] / 4);
  if (!g.is_ample(g.divisor(h))) h.back() += 1;
  return g.divisor(h);
}

void BM_TripleProduct(benchmark::State& state) {
  const Geometry g = builtin_geometry("elliptic-dp" + std::to_string(state.range(0)));
  const auto h = ample_polarization(g);
  const auto d = g.basis_divisor(0) - g.basis_divisor(1);
  for (auto _ : state) benchmark::DoNotOptimize(g.triple_product(d, h, h));
}
BENCHMARK(BM_TripleProduct)->DenseRange(1, 8, 7);

void BM_EulerCharacteristic(benchmark::State& state) {
  const Geometry g = builtin_geometry("octic-k3");
  const ExtensionSpec spec(tangent(g), trivial_line(g), g.divisor({Rational(7), Rational(-5)}));
  for (auto _ : state) benchmark::DoNotOptimize(euler_characteristic(g, spec));
}
BENCHMARK(BM_EulerCharacteristic);

void BM_SolveOrthogonal(benchmark::State& state) {
  const Geometry g = builtin_geometry("elliptic-dp" + std::to_string(state.range(0)));
  const auto h = ample_polarization(g);
  const int bound = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_orthogonal(g, h, bound, 1));
}
BENCHMARK(BM_SolveOrthogonal)->Args({3, 3})->Args({5, 2})->Args({8, 1})->Unit(benchmark::kMillisecond);

void BM_SearchOctic(benchmark::State& state) {
  const Geometry g = builtin_geometry("octic-k3");
  const auto h = g.divisor({Rational(1), make_rational(5, 2)});
  SearchConfig config;
  config.coord_bound = static_cast<int>(state.range(0));
  config.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(search(g, h, config));
}
BENCHMARK(BM_SearchOctic)->Arg(3)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_ConeMembership(benchmark::State& state) {
  const Geometry g = builtin_geometry("elliptic-dp" + std::to_string(state.range(0)));
  std::vector<Rational> w(g.picard_rank(), Rational(0));
  w[0] = 100;
  for (std::size_t i = 1; i < w.size(); ++i) w[i] = g.c2X()[i];
  const auto curve = g.curve(w);
  for (auto _ : state) benchmark::DoNotOptimize(is_effective(g, curve));
}
BENCHMARK(BM_ConeMembership)->DenseRange(2, 8, 3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
