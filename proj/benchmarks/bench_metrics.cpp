#include <benchmark/benchmark.h>

#include <vector>

#include "drs/converter.hpp"
#include "drs/metrics.hpp"
#include "support.hpp"

namespace {

using drs::testing::ClauseGen;

struct ClausePair {
  drs::ClauseSet pred, gold;
};

std::vector<ClausePair> clause_pairs(std::size_t entities, std::size_t n) {
  drs::Rng rng(entities * 7919 + 1);
  ClauseGen gen;
  gen.min_entities = gen.max_entities = entities;
  std::vector<ClausePair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    auto gold = drs::testing::random_clause_set(rng, gen);
    auto pred = drs::testing::rename_variables(drs::testing::perturb_clauses(gold, rng, 3), rng);
    pairs.push_back({std::move(pred), std::move(gold)});
  }
  return pairs;
}

void run_counter(benchmark::State& state, std::size_t threshold) {
  const auto pairs = clause_pairs(static_cast<std::size_t>(state.range(0)), 16);
  drs::SearchConfig search;
  search.exact_threshold = threshold;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& p = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(drs::counter_f1(p.pred, p.gold, search).matched);
  }
}

void BM_counter_exact(benchmark::State& state) { run_counter(state, 64); }
void BM_counter_hill_climb(benchmark::State& state) { run_counter(state, 0); }

BENCHMARK(BM_counter_exact)->DenseRange(1, 5);
BENCHMARK(BM_counter_hill_climb)->DenseRange(1, 5)->Arg(8)->Arg(12);

void BM_smatch(benchmark::State& state) {
  drs::Rng rng(42);
  drs::testing::GraphGen gen;
  gen.min_content = gen.max_content = 8;
  std::vector<std::pair<drs::DrsGraph, drs::DrsGraph>> pairs;
  for (int i = 0; i < 16; ++i) {
    auto gold = drs::testing::random_graph(rng, gen);
    auto pred = drs::testing::permute_nodes(drs::testing::perturb_graph(gold, rng, 2), rng);
    pairs.emplace_back(std::move(pred), std::move(gold));
  }
  drs::SearchConfig search;
  search.restarts = static_cast<int>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [pred, gold] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(drs::smatch_f1(pred, gold, search).matched);
  }
}
BENCHMARK(BM_smatch)->Arg(1)->Arg(4)->Arg(32);

}  // namespace
