#include <benchmark/benchmark.h>

#include "cantor/counting.hpp"
#include "cantor/enumerator.hpp"
#include "cantor/store.hpp"
#include "cantor/symmetry.hpp"

using namespace cantor;

static void BM_Algorithm1(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_by_algorithm1(q));
}
BENCHMARK(BM_Algorithm1)->Arg(757)->Arg(6643)->Arg(59293)->Arg(531442);

static void BM_WordOracle(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  const auto system = DigitSystem::ternary();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_by_words(q, system));
}
BENCHMARK(BM_WordOracle)->Arg(757)->Arg(6643)->Arg(59293)->Arg(1001523179);

static void BM_CoprimeLoop(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  const auto system = DigitSystem::ternary();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_by_coprime_loop(q, system));
}
BENCHMARK(BM_CoprimeLoop)->Arg(757)->Arg(6643);

static void BM_EnumerateRange(benchmark::State& state) {
  const auto q_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_range(2, q_max, std::nullopt, 0));
}
BENCHMARK(BM_EnumerateRange)->Arg(2187)->Arg(19683)->Unit(benchmark::kMillisecond);

static void BM_EllHatScan(benchmark::State& state) {
  const auto q_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ell_hat_scan(q_max, 1));
}
BENCHMARK(BM_EllHatScan)->Arg(729)->Arg(6561)->Unit(benchmark::kMillisecond);

static void BM_PaddedCensus(benchmark::State& state) {
  const auto r = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(census(SymmetryKind::padded, r));
}
BENCHMARK(BM_PaddedCensus)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
