// Microbenchmarks for the hot paths: similarity scoring, the novelty history
// scan, full trace evaluation, and the aggregation math.

#include <benchmark/benchmark.h>

#include <deque>
#include <string>
#include <vector>

#include "iiq/aggregation.hpp"
#include "iiq/engine.hpp"
#include "iiq/novelty.hpp"
#include "iiq/report.hpp"
#include "iiq/simulator.hpp"
#include "iiq/types.hpp"

namespace {

std::string words(int count, int salt) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (!out.empty()) out += ' ';
    out += "token" + std::to_string(salt * 1000 + i);
  }
  return out;
}

void BM_EditSimilarity(benchmark::State& state) {
  const auto a = iiq::TaskRepresentation::from_raw(words(30, 1));
  const auto b = iiq::TaskRepresentation::from_raw(words(30, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iiq::edit_similarity(a, b));
  }
}
BENCHMARK(BM_EditSimilarity);

void BM_KeywordSimilarity(benchmark::State& state) {
  const auto a = iiq::TaskRepresentation::from_raw(words(30, 1));
  const auto b = iiq::TaskRepresentation::from_raw(words(30, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iiq::keyword_similarity(a, b));
  }
}
BENCHMARK(BM_KeywordSimilarity);

void BM_NoveltyScanFullHistory(benchmark::State& state) {
  std::deque<iiq::TaskRepresentation> history;
  for (int i = 0; i < 50; ++i) {
    iiq::push_history(history, iiq::TaskRepresentation::from_raw(words(8, i)), 50);
  }
  const auto probe = iiq::TaskRepresentation::from_raw(words(8, 999));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        iiq::novelty_weight(probe, history, iiq::SimilarityMethod::hybrid));
  }
}
BENCHMARK(BM_NoveltyScanFullHistory);

void BM_RunScenarioTrace(benchmark::State& state) {
  const iiq::EngineConfig config;
  const auto& spec = iiq::builtin_scenarios().at("A");
  const auto trace = iiq::generate_trace(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iiq::run_user_trace(trace, config, spec.leverage_level));
  }
}
BENCHMARK(BM_RunScenarioTrace);

void BM_RenderResultsCsv(benchmark::State& state) {
  const iiq::EngineConfig config;
  const auto& spec = iiq::builtin_scenarios().at("A");
  const auto results = iiq::run_user_trace(iiq::generate_trace(spec), config, spec.leverage_level);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iiq::render_results_csv(results, config));
  }
}
BENCHMARK(BM_RenderResultsCsv);

void BM_Gini(benchmark::State& state) {
  iiq::Rng rng(7);
  std::vector<double> indexes;
  indexes.reserve(1000);
  for (int i = 0; i < 1000; ++i) indexes.push_back(rng.next_real(0.0, 900.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iiq::gini_coefficient(indexes));
  }
}
BENCHMARK(BM_Gini);

}  // namespace

BENCHMARK_MAIN();
