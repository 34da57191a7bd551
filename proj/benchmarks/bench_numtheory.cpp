#include <benchmark/benchmark.h>

#include "cantor/factor.hpp"
#include "cantor/numtheory.hpp"

using namespace cantor;

static void BM_MultOrder(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mult_order(3, q));
}
BENCHMARK(BM_MultOrder)->Arg(757)->Arg(363889)->Arg(1001523179)->Arg(3486843451);

static void BM_Mlo(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mlo(q));
}
BENCHMARK(BM_Mlo)->Arg(757)->Arg(4785157)->Arg(1001523179);

static void BM_FactorThreePowerMinusOne(benchmark::State& state) {
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), 3, static_cast<unsigned long>(state.range(0)));
  n -= 1;
  for (auto _ : state) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_FactorThreePowerMinusOne)->Arg(24)->Arg(40)->Arg(60);
BENCHMARK_MAIN();
