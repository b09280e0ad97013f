#include <benchmark/benchmark.h>

#include "drs/lora.hpp"
#include "support.hpp"

namespace {

// range(0) = d = k, range(1) = r
void BM_lora_forward(benchmark::State& state) {
  drs::Rng rng(3);
  const auto d = static_cast<Eigen::Index>(state.range(0));
  const auto r = static_cast<Eigen::Index>(state.range(1));
  drs::LoraLayer layer(drs::testing::random_matrix(rng, d, d), drs::testing::random_matrix(rng, d, r),
                       drs::testing::random_matrix(rng, r, d));
  const Eigen::VectorXd x = drs::testing::random_matrix(rng, d, 1).col(0);
  for (auto _ : state) benchmark::DoNotOptimize(drs::lora_forward(layer, x));
}
BENCHMARK(BM_lora_forward)->Args({256, 4})->Args({256, 16})->Args({1024, 4})->Args({1024, 16});

void BM_dense_merged_forward(benchmark::State& state) {
  drs::Rng rng(3);
  const auto d = static_cast<Eigen::Index>(state.range(0));
  const auto r = static_cast<Eigen::Index>(state.range(1));
  const Eigen::MatrixXd w = drs::testing::random_matrix(rng, d, d) +
                            drs::testing::random_matrix(rng, d, r) * drs::testing::random_matrix(rng, r, d);
  const Eigen::VectorXd x = drs::testing::random_matrix(rng, d, 1).col(0);
  for (auto _ : state) benchmark::DoNotOptimize(Eigen::VectorXd(w * x));
}
BENCHMARK(BM_dense_merged_forward)->Args({256, 4})->Args({1024, 4});

}  // namespace
