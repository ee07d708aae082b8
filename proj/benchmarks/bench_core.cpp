// Microbenchmarks for the decision-making hot paths: exact lower
// expectations, the pruning sweep versus naive pairwise maximality, and
// posterior interval prediction.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "credalml/decision.hpp"
#include "credalml/harness.hpp"
#include "credalml/ncc.hpp"
#include "credalml/tree.hpp"

using namespace credalml;

namespace {

ImpreciseBinaryTree bench_tree(int m) {
  std::mt19937_64 rng(1);
  return generate_tree(m, 0.25, rng);
}

CostVector bench_cost(int m) {
  std::mt19937_64 rng(2);
  std::vector<double> costs(std::size_t{1} << m);
  for (double& c : costs) c = uniform01(rng);
  return CostVector(m, std::move(costs));
}

}  // namespace

static void BM_LowerExpectation(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ImpreciseBinaryTree tree = bench_tree(m);
  const CostVector cost = bench_cost(m);
  for (auto _ : state) benchmark::DoNotOptimize(lower_expectation(tree, cost));
}
BENCHMARK(BM_LowerExpectation)->Arg(4)->Arg(6)->Arg(8);

static void BM_MaximalSetPruned(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ImpreciseBinaryTree tree = bench_tree(m);
  TreeOracle oracle(tree);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_set(oracle).set.size());
}
BENCHMARK(BM_MaximalSetPruned)->Arg(3)->Arg(5)->Arg(7);

static void BM_MaximalSetPairwise(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ImpreciseBinaryTree tree = bench_tree(m);
  TreeOracle oracle(tree);
  const LossMatrix loss = LossMatrix::hamming(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(maximal_set_pairwise(oracle, loss).size());
}
BENCHMARK(BM_MaximalSetPairwise)->Arg(3)->Arg(5)->Arg(7);

static void BM_NccPredict(benchmark::State& state) {
  const TabularDataset raw = make_synthetic_dataset(500, 8, 6, 7);
  const DiscreteDataset data = discretize(raw, 5);
  const NccModel model = ncc_fit(data, 2.0);
  std::size_t row = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ncc_predict(model, data.features[row]));
    row = (row + 1) % data.features.size();
  }
}
BENCHMARK(BM_NccPredict);

BENCHMARK_MAIN();
