// Per-test work items run serially vs on the OpenMP team.

#include "support/helpers.hpp"
#include "support/random_terms.hpp"

#include <benchmark/benchmark.h>

using namespace markt;
using namespace markt::testsupport;

namespace {

struct Workload {
  std::string left, right, alphabet;
};

// A fixed pair deep and wide enough that every check has a few hundred
// tests to go through.
Workload workload() {
  TermGen gen(1234);
  auto names = gen.alphabet(3);
  RSum left = gen.sum(4, names);
  while (left.size() < 3) left = gen.sum(4, names);
  return {render(left), render(perturbed(left, gen)), "a,b,c"};
}

const std::vector<std::string> kPatterns{"*", "*.*", "*.*.*", "*.*.*.*"};

Comparison build(Execution e) {
  static const Workload w = workload();
  CheckOptions o;
  o.execution = e;
  return compare(w.left, w.right, kPatterns, w.alphabet, o);
}

void BM_Explore(benchmark::State& state, Execution e) {
  for (auto _ : state) benchmark::DoNotOptimize(build(e));
}

void BM_Equiv(benchmark::State& state, Execution e) {
  auto cmp = build(e);
  for (auto _ : state) benchmark::DoNotOptimize(check_mt_equiv(cmp));
}

void BM_TemporalPm(benchmark::State& state, Execution e) {
  auto cmp = build(e);
  for (auto _ : state) benchmark::DoNotOptimize(check_temporal(cmp, Rational(1, 2), true));
}

void BM_Unified(benchmark::State& state, Execution e) {
  auto cmp = build(e);
  SimilarityParams p{ratio(2, 3), ratio(2, 3), EpsilonSpec(ratio(1, 2)), ratio(1, 4)};
  for (auto _ : state) benchmark::DoNotOptimize(check_unified(cmp, p));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Explore, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Explore, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Equiv, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Equiv, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TemporalPm, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TemporalPm, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Unified, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Unified, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
