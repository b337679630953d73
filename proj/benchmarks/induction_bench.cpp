#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "infodd/diagram_io.hpp"
#include "infodd/entropy.hpp"
#include "infodd/induction.hpp"

using namespace infodd;

namespace {

void BM_RankCars(benchmark::State& state) {
  const DecisionTable t = infodd::testing::cars_table();
  for (auto _ : state) benchmark::DoNotOptimize(rank_variables(t));
}
BENCHMARK(BM_RankCars);

void BM_RankMonks(benchmark::State& state) {
  const DecisionTable t = infodd::testing::monks_test_table(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_variables(t));
}
BENCHMARK(BM_RankMonks)->DenseRange(1, 3);

void BM_GreedyMonks(benchmark::State& state) {
  const DecisionTable t = infodd::testing::monks_test_table(static_cast<int>(state.range(0)));
  const auto kind = state.range(1) ? DiagramKind::reduced : DiagramKind::tree;
  for (auto _ : state) benchmark::DoNotOptimize(info_greedy(t, InductionConfig::greedy(kind)));
}
BENCHMARK(BM_GreedyMonks)->ArgsProduct({{1, 2, 3}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_IterMonks(benchmark::State& state) {
  const DecisionTable t = infodd::testing::monks_test_table(static_cast<int>(state.range(0)));
  InductionConfig config = InductionConfig::iter(static_cast<int>(state.range(1)));
  config.criterion = CostOrder::nodes_then_levels;
  for (auto _ : state) benchmark::DoNotOptimize(info_iter(t, config));
}
BENCHMARK(BM_IterMonks)->ArgsProduct({{1, 2, 3}, {1, 10}})->Unit(benchmark::kMillisecond);

void BM_IterCars(benchmark::State& state) {
  const DecisionTable t = infodd::testing::cars_table();
  for (auto _ : state) benchmark::DoNotOptimize(info_iter(t, InductionConfig::iter(10)));
}
BENCHMARK(BM_IterCars);

void BM_ReduceTree(benchmark::State& state) {
  const DecisionTable t = infodd::testing::monks_test_table(2);
  const Diagram tree = info_greedy(t, InductionConfig::greedy(DiagramKind::tree));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(tree));
}
BENCHMARK(BM_ReduceTree);

void BM_SerializeRoundTrip(benchmark::State& state) {
  const DecisionTable t = infodd::testing::monks_test_table(2);
  const Diagram tree = info_greedy(t, InductionConfig::greedy(DiagramKind::tree));
  for (auto _ : state) benchmark::DoNotOptimize(deserialize(serialize(tree), t.schema_ptr()));
}
BENCHMARK(BM_SerializeRoundTrip);

void BM_EvaluateAll(benchmark::State& state) {
  const DecisionTable t = infodd::testing::monks_test_table(1);
  const Diagram dd = info_greedy(t, InductionConfig::greedy());
  for (auto _ : state) {
    for (const auto& r : t.rows()) benchmark::DoNotOptimize(evaluate(dd, r.values));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(t.size()));
}
BENCHMARK(BM_EvaluateAll);

}  // namespace
BENCHMARK_MAIN();
