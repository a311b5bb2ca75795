#include <benchmark/benchmark.h>

#include <random>

#include "rcf/bench.hpp"
#include "rcf/generator.hpp"

namespace {

void BM_RcfNextWord(benchmark::State& state) {
  rcf::GeneratorConfig cfg;
  cfg.entropy = rcf::EntropyMode::deterministic(1);
  auto g = rcf::RcfGenerator::from_entropy(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(g());
}
BENCHMARK(BM_RcfNextWord);

void BM_RcfNextWordCompensated(benchmark::State& state) {
  rcf::GeneratorConfig cfg;
  cfg.entropy = rcf::EntropyMode::deterministic(1);
  cfg.precision = rcf::PrecisionMode::Compensated;
  auto g = rcf::RcfGenerator::from_entropy(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(g());
}
BENCHMARK(BM_RcfNextWordCompensated);

void BM_RcfNextWord64(benchmark::State& state) {
  rcf::GeneratorConfig cfg;
  cfg.entropy = rcf::EntropyMode::deterministic(1);
  cfg.word_size = rcf::WordSize::Bits64;
  auto g = rcf::RcfGenerator64::from_entropy(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(g());
}
BENCHMARK(BM_RcfNextWord64);

void BM_Mt19937(benchmark::State& state) {
  rcf::Mt19937 mt;
  for (auto _ : state) benchmark::DoNotOptimize(mt());
}
BENCHMARK(BM_Mt19937);

void BM_StdMt19937(benchmark::State& state) {
  std::mt19937 mt;
  for (auto _ : state) benchmark::DoNotOptimize(mt());
}
BENCHMARK(BM_StdMt19937);

}  // namespace

BENCHMARK_MAIN();
