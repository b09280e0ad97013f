#include <benchmark/benchmark.h>

#include "drs/converter.hpp"
#include "drs/format_io.hpp"
#include "support.hpp"

namespace {

void BM_clause_linearize_round_trip(benchmark::State& state) {
  drs::Rng rng(7);
  drs::testing::ClauseGen gen;
  gen.min_entities = gen.max_entities = static_cast<std::size_t>(state.range(0));
  const auto set = drs::testing::random_clause_set(rng, gen);
  for (auto _ : state) {
    auto seq = drs::linearize_clauses(set);
    benchmark::DoNotOptimize(drs::delinearize_clauses(seq));
  }
}
BENCHMARK(BM_clause_linearize_round_trip)->Arg(2)->Arg(5)->Arg(10);

void BM_sbn_linearize_round_trip(benchmark::State& state) {
  drs::Rng rng(11);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sbn = drs::testing::random_sbn(rng, n, n);
  for (auto _ : state) {
    auto seq = drs::linearize_sbn(sbn);
    benchmark::DoNotOptimize(drs::delinearize_sbn(seq));
  }
}
BENCHMARK(BM_sbn_linearize_round_trip)->Arg(4)->Arg(16)->Arg(64);

void BM_clauses_to_sbn(benchmark::State& state) {
  drs::Rng rng(13);
  const auto set = drs::testing::random_clause_set(rng);
  for (auto _ : state) benchmark::DoNotOptimize(drs::graph_to_sbn(drs::clauses_to_graph(set)));
}
BENCHMARK(BM_clauses_to_sbn);

}  // namespace
