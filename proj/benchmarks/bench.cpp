#include "mtv/engine.hpp"
#include "mtv/modsym.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace mtv;

namespace {

const WeierstrassCurve& e37() {
  static WeierstrassCurve e(0, 0, 1, -1, 0);
  return e;
}

const ModularSymbolSpace& space37() {
  static ModularSymbolSpace s(e37());
  return s;
}

void BM_BuildSpace37(benchmark::State& state) {
  for (auto _ : state) {
    ModularSymbolSpace s(e37());
    benchmark::DoNotOptimize(s.dim());
  }
}
BENCHMARK(BM_BuildSpace37);

void BM_BuildSpace389Level(benchmark::State& state) {
  // a bigger level: 53a base-changed is not available, use 1610 sparingly
  WeierstrassCurve e(1, -1, 1, 0, 0); // conductor 53
  for (auto _ : state) {
    ModularSymbolSpace s(e);
    benchmark::DoNotOptimize(s.dim());
  }
}
BENCHMARK(BM_BuildSpace389Level);

void BM_EvalSymbol(benchmark::State& state) {
  const ModularSymbolSpace& s = space37();
  long a = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.eval_symbol(a, 5005));
    a = (a + 2) % 5005;
    if (gcd(Integer(a), Integer(5005)) != 1) a += 2;
  }
}
BENCHMARK(BM_EvalSymbol);

void BM_SymbolTable(benchmark::State& state) {
  const ModularSymbolSpace& s = space37();
  for (auto _ : state)
    benchmark::DoNotOptimize(symbol_table(s, state.range(0)).values.size());
}
BENCHMARK(BM_SymbolTable)->Arg(47)->Arg(101);

void BM_ScalarMul(benchmark::State& state) {
  RationalPoint g = RationalPoint::affine(Rational(0), Rational(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        scalar_mul(e37(), Integer(state.range(0)), g).at_infinity);
}
BENCHMARK(BM_ScalarMul)->Arg(64)->Arg(512)->Arg(2880);

void BM_CountPoints(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(count_points(e37(), state.range(0)));
}
BENCHMARK(BM_CountPoints)->Arg(97)->Arg(499);

void BM_Tate1610(benchmark::State& state) {
  WeierstrassCurve e(1, -1, 1, -8587, -304111);
  for (auto _ : state)
    for (long p : {2L, 5L, 7L, 23L})
      benchmark::DoNotOptimize(classify_reduction(e, p).cp);
}
BENCHMARK(BM_Tate1610);

void BM_KernelBasis(benchmark::State& state) {
  std::mt19937 rng(1);
  long n = state.range(0);
  RationalMatrix m(n, n);
  for (long i = 0; i < n; i++)
    for (long j = 0; j < n; j++)
      m.at(i, j) = Rational((long)(rng() % 7) - 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m).size());
}
BENCHMARK(BM_KernelBasis)->Arg(10)->Arg(40);

} // namespace

BENCHMARK_MAIN();
