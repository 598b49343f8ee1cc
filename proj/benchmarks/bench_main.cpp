#include <benchmark/benchmark.h>

#include <random>

#include "prefgraph/active.hpp"
#include "prefgraph/denoise.hpp"
#include "prefgraph/perturb.hpp"
#include "prefgraph/random.hpp"
#include "prefgraph/rank_ensemble.hpp"

namespace {

using namespace prefgraph;

PreferenceGraph noisy_graph(std::size_t n, std::uint64_t seed) {
  const auto truth = random_dag(n, 0.5, seed);
  std::vector<PreferenceGraph> samples;
  for (std::uint64_t s = 0; s < 3; ++s) samples.push_back(perturb(truth, {0.3, 0.3}, derive_seed(seed, s)));
  return ensemble(GraphSet(std::move(samples)));
}

RankingProfile random_profile(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("c" + std::to_string(i));
  std::mt19937_64 gen(seed);
  std::vector<Ranking> rankings;
  for (std::size_t r = 0; r < k; ++r) {
    std::shuffle(ids.begin(), ids.end(), gen);
    rankings.emplace_back(ids);
  }
  return RankingProfile(std::move(rankings));
}

void BM_GreedyFas(benchmark::State& state) {
  const auto g = noisy_graph(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(denoise(g, DenoiseMode::kGreedy));
}
BENCHMARK(BM_GreedyFas)->Arg(10)->Arg(30)->Arg(100);

void BM_ExactFas(benchmark::State& state) {
  const auto g = noisy_graph(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(exact_min_fas(g));
}
BENCHMARK(BM_ExactFas)->Arg(6)->Arg(8);

void BM_KemenyExact(benchmark::State& state) {
  const auto p = random_profile(static_cast<std::size_t>(state.range(0)), 7, 3);
  AggregationOptions options;
  options.mode = SearchMode::kExact;
  for (auto _ : state) benchmark::DoNotOptimize(kemeny_aggregate(p, options));
}
BENCHMARK(BM_KemenyExact)->Arg(6)->Arg(8);

void BM_KemenyLocal(benchmark::State& state) {
  const auto p = random_profile(static_cast<std::size_t>(state.range(0)), 7, 4);
  AggregationOptions options;
  options.mode = SearchMode::kLocalSearch;
  for (auto _ : state) benchmark::DoNotOptimize(kemeny_aggregate(p, options));
}
BENCHMARK(BM_KemenyLocal)->Arg(30);

void BM_PageRank(benchmark::State& state) {
  const auto g = noisy_graph(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(pagerank(g, {}));
}
BENCHMARK(BM_PageRank)->Arg(10)->Arg(50);

void BM_RecoveryTrial(benchmark::State& state) {
  const auto truth = random_dag_with_arcs(6, 8, 6);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(recovery_trial(truth, {0.25, 0.3}, 50, ++seed));
}
BENCHMARK(BM_RecoveryTrial);

}  // namespace

BENCHMARK_MAIN();
