#include <curvforge/connection.hpp>
#include <curvforge/curvature_algebra.hpp>
#include <curvforge/jet.hpp>
#include <curvforge/realization.hpp>

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

namespace {

using namespace curvforge;

Jet random_jet(std::uint64_t seed, int vars, int order, int terms) {
  std::mt19937_64 rng(seed);
  Jet out(vars, order);
  std::vector<int> exps(vars);
  for (int t = 0; t < terms; ++t) {
    int degree = 0;
    for (int& e : exps) {
      e = static_cast<int>(rng() % 3);
      degree += e;
    }
    if (degree > order) continue;
    const Rational c(static_cast<long>(rng() % 9) - 4);
    out = out + Jet::monomial(vars, order, exps, c);
  }
  return out;
}

void bm_jet_multiply(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Jet a = random_jet(1, 4, order, 24);
  const Jet b = random_jet(2, 4, order, 24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(bm_jet_multiply)->Arg(4)->Arg(6)->Arg(8);

void bm_curvature(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const CurvatureOp a = random_curvature(7, m, {true, true, true});
  const Connection nabla = realize_linear(a, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(curvature(nabla));
  }
}
BENCHMARK(bm_curvature)->Arg(3)->Arg(4)->Arg(5);

void bm_decompose(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const CurvatureOp a = random_curvature(7, m, {true, true, true});
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(a));
  }
}
BENCHMARK(bm_decompose)->Arg(3)->Arg(5)->Arg(7);

void bm_realize_ricci_constant(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const CurvatureOp a = random_curvature(7, 3, {true, true, true});
  for (auto _ : state) {
    benchmark::DoNotOptimize(realize_ricci_constant(a, order));
  }
}
BENCHMARK(bm_realize_ricci_constant)->Arg(3)->Arg(4)->Arg(6);

void bm_component_dimensions(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(component_dimensions(m));
  }
}
BENCHMARK(bm_component_dimensions)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
