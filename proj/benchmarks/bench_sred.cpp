#include <benchmark/benchmark.h>

#include <random>

#include "sred/survey.hpp"

using namespace sred;

namespace {

NumberField q(long d) { return NumberField::create({-d, 0, 1}); }

void BM_Census(benchmark::State& state) {
  auto F = q(state.range(0));
  auto C = ReductionConstant::parse("sqrt(2)");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_sred(F, C));
}
BENCHMARK(BM_Census)->Arg(73)->Arg(79)->Arg(199)->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& state) {
  auto F = q(state.range(0));
  auto C = ReductionConstant::parse("2");
  auto divisors = sample_divisors(F, 64, 5);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(reduce(divisors[i++ % divisors.size()], C));
}
BENCHMARK(BM_Reduce)->Arg(7)->Arg(73)->Arg(79)->Unit(benchmark::kMicrosecond);

void BM_ShortestVector(benchmark::State& state) {
  auto F = NumberField::create({1, 1, 1, 1, 1});
  auto ideals = enumerate_integral_ideals(F, Rat(40));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(shortest_vector(gram_of(ideals[i++ % ideals.size()])));
}
BENCHMARK(BM_ShortestVector)->Unit(benchmark::kMicrosecond);

void BM_PrincipalCycle(benchmark::State& state) {
  auto F = q(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(principal_cycle(F));
}
BENCHMARK(BM_PrincipalCycle)->Arg(73)->Arg(94)->Arg(991)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
