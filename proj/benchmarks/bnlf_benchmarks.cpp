#include <benchmark/benchmark.h>

#include <random>

#include "bnlf/inference.hpp"
#include "bnlf/influence.hpp"
#include "bnlf/pipeline.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace {

using namespace bnlf;

std::vector<PredictionRecord> corpus(std::size_t n) {
  testing::HomeCorpusSpec spec;
  spec.records = n;
  return testing::make_home_corpus_records(spec);
}

void BM_Fit(benchmark::State& state) {
  const auto recs = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit({}, recs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Fit)->Arg(1000)->Arg(15408)->Unit(benchmark::kMillisecond);

void BM_PredictBatch(benchmark::State& state) {
  const auto recs = corpus(15408);
  const auto fitted = fit({}, recs);
  const auto test = apply_manifest(recs, fitted.manifest).test;
  for (auto _ : state) benchmark::DoNotOptimize(predict_batch(fitted.network, test, fitted.config.model_names));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(test.size()));
}
BENCHMARK(BM_PredictBatch)->Unit(benchmark::kMillisecond);

void BM_PosteriorMissingModel(benchmark::State& state) {
  const auto fitted = fit({}, corpus(3000));
  const Assignment ev{{"Corpus", "tfns"}, {"finbert", "negative"}, {"bertweet", "positive"}};
  for (auto _ : state) benchmark::DoNotOptimize(posterior(fitted.network, "Sentiment", ev));
}
BENCHMARK(BM_PosteriorMissingModel);

void BM_PosteriorRandomNetwork(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto net = testing::random_network(rng, 6, 4, 0.6);
  const std::string query = net.nodes()[net.topo_order().back()].name;
  const Assignment ev{{net.nodes()[net.topo_order().front()].name, "s0"}};
  for (auto _ : state) benchmark::DoNotOptimize(posterior(net, query, ev));
}
BENCHMARK(BM_PosteriorRandomNetwork);

void BM_InfluenceReport(benchmark::State& state) {
  const auto fitted = fit({}, corpus(3000));
  for (auto _ : state) benchmark::DoNotOptimize(influence_report(fitted.network));
}
BENCHMARK(BM_InfluenceReport);

}  // namespace

BENCHMARK_MAIN();
