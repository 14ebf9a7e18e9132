#include <benchmark/benchmark.h>

#include "serve_order/analytic.hpp"
#include "serve_order/match.hpp"
#include "serve_order/scan.hpp"
#include "serve_order/simulator.hpp"

using namespace serve_order;

namespace {

void BM_GameWinProb(benchmark::State& state) {
  double p = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(game_win_prob(Probability(p)));
    p = p < 0.9 ? p + 1e-6 : 0.5;
  }
}
BENCHMARK(BM_GameWinProb);

void BM_SetModel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(SetModel::from(ServeParams(0.66, 0.61)));
}
BENCHMARK(BM_SetModel);

void BM_SetScoreDistribution(benchmark::State& state) {
  const SetModel model = SetModel::from(ServeParams(0.66, 0.61));
  for (auto _ : state) benchmark::DoNotOptimize(set_score_distribution(model, Player::A));
}
BENCHMARK(BM_SetScoreDistribution);

void BM_MatchDistribution(benchmark::State& state) {
  const SetModel model = SetModel::from(ServeParams(0.66, 0.61));
  for (auto _ : state) benchmark::DoNotOptimize(match_distribution(model, Player::A));
}
BENCHMARK(BM_MatchDistribution);

void BM_MatchExpectations(benchmark::State& state) {
  const SetModel model = SetModel::from(ServeParams(0.66, 0.61));
  for (auto _ : state) benchmark::DoNotOptimize(match_expectations(model));
}
BENCHMARK(BM_MatchExpectations);

void BM_OverlineScan(benchmark::State& state) {
  ScanSpec spec;
  spec.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_overline(spec));
}
BENCHMARK(BM_OverlineScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExpectationScan(benchmark::State& state) {
  ScanSpec spec{0.50, 0.90, 0.005, {}, 1};
  for (auto _ : state) benchmark::DoNotOptimize(scan_expectations(spec));
}
BENCHMARK(BM_ExpectationScan)->Unit(benchmark::kMillisecond);

void BM_SimulateMatch(benchmark::State& state) {
  const ServeParams params(0.65, 0.60);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_match(params, Player::A, rng));
}
BENCHMARK(BM_SimulateMatch);

void BM_Tally(benchmark::State& state) {
  const SimConfig config{ServeParams(0.65, 0.60), Player::A, 100'000, 1, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(tally(config));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(config.n_matches));
}
BENCHMARK(BM_Tally)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
