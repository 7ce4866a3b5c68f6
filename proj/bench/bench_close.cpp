// Serial reference vs OpenMP kernels: Close mining and the minsup sweep.
#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "idxminer/close_miner.hpp"
#include "idxminer/cost_model.hpp"
#include "idxminer/workload.hpp"

namespace {

using namespace idxminer;

ExtractionContext make_context(std::size_t attributes, std::size_t queries, double density) {
  std::mt19937_64 rng(1234);
  std::bernoulli_distribution bit(density);
  std::vector<AttributeRef> attrs;
  for (std::size_t i = 0; i < attributes; ++i) attrs.push_back({"t", "c" + std::to_string(1000 + i)});
  std::vector<std::string> ids;
  std::vector<AttrSet> rows;
  for (std::size_t q = 0; q < queries; ++q) {
    AttrSet row(attributes);
    for (std::size_t i = 0; i < attributes; ++i) {
      if (bit(rng)) row.set(i);
    }
    ids.push_back("Q" + std::to_string(q + 1));
    rows.push_back(std::move(row));
  }
  return ExtractionContext(attrs, ids, rows);
}

void BM_Close(benchmark::State& state, Execution execution) {
  const auto ctx = make_context(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(1)), 0.25);
  const MiningParams params{Ratio{2, 100}};
  std::size_t found = 0;
  for (auto _ : state) {
    const auto closed = mine_close(ctx, params, execution);
    found = closed.itemsets.size();
    benchmark::DoNotOptimize(found);
  }
  state.counters["closed_itemsets"] = static_cast<double>(found);
}

void BM_CloseSerial(benchmark::State& state) { BM_Close(state, Execution::kSerial); }
void BM_CloseParallel(benchmark::State& state) { BM_Close(state, Execution::kParallel); }

BENCHMARK(BM_CloseSerial)->Args({24, 500})->Args({40, 2000})->Args({64, 5000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CloseParallel)->Args({24, 500})->Args({40, 2000})->Args({64, 5000})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state, Execution execution) {
  const std::filesystem::path data(IDXMINER_DATA_DIR);
  const auto catalog = Catalog::load(data / "synthetic_catalog.json");
  const auto workload = load_workload(data / "synthetic_workload.sql", catalog);
  const auto grid = parse_grid("0.01:1.0:0.01");
  SweepOptions options;
  options.execution = execution;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_minsup(workload, catalog, grid, options));
  }
}

void BM_SweepSerial(benchmark::State& state) { BM_Sweep(state, Execution::kSerial); }
void BM_SweepParallel(benchmark::State& state) { BM_Sweep(state, Execution::kParallel); }

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
