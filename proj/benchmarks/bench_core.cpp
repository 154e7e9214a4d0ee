#include <benchmark/benchmark.h>

#include "qdet/coherence.hpp"
#include "qdet/feasibility.hpp"
#include "qdet/random.hpp"
#include "qdet/synthesis.hpp"
#include "support/instances.hpp"

namespace {

using namespace qdet;

void BM_HermitianEig(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  const StateSet s = random_state_set(d, d, 1, GenericMode{});
  const ComplexMatrix g = gram(s);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(g));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(2, 64);

void BM_FeasibilityCheck(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  const auto inst = testing::hadamard_feasible(d, d, 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(feasibility_check(inst.initial, inst.final_states));
}
BENCHMARK(BM_FeasibilityCheck)->RangeMultiplier(2)->Range(2, 32);

void BM_Synthesize(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  const auto inst = testing::hadamard_feasible(d, d, 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(inst.initial, inst.final_states));
}
BENCHMARK(BM_Synthesize)->RangeMultiplier(2)->Range(2, 32);

void BM_Roundtrip(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  const StateSet a = random_state_set(d, d, 3, IndependentMode{});
  const StateSet b = random_state_set(d, d, 4, UnitaryImageMode{a});
  Rng rng(5);
  const auto q = testing::random_complete_q(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(purity_unitarity_roundtrip(a, b, q));
}
BENCHMARK(BM_Roundtrip)->RangeMultiplier(2)->Range(2, 16);

}  // namespace

BENCHMARK_MAIN();
