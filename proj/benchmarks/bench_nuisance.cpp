#include <benchmark/benchmark.h>

#include "rctsim/crossfit.hpp"
#include "rctsim/dgp.hpp"
#include "rctsim/estimators.hpp"
#include "rctsim/nuisance/forest.hpp"
#include "rctsim/nuisance/logistic.hpp"
#include "rctsim/random.hpp"

namespace {

rctsim::GeneratedSample make_sample(std::size_t n, int experiment) {
  rctsim::Rng rng(12345);
  return rctsim::generate_sample(rctsim::DgpSpec::experiment(experiment), n, rng);
}

void BM_ForestFit(benchmark::State& state) {
  const auto g = make_sample(static_cast<std::size_t>(state.range(0)), 1);
  std::vector<double> ws, ys;
  for (const auto& o : g.sample.observations) {
    ws.push_back(o.w);
    ys.push_back(o.y);
  }
  for (auto _ : state) {
    auto fit = rctsim::fit_forest(ws, ys, {}, rctsim::ForestParams{}, 7);
    benchmark::DoNotOptimize(fit);
  }
}
BENCHMARK(BM_ForestFit)->Arg(200)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_LogisticIrls(benchmark::State& state) {
  const auto g = make_sample(static_cast<std::size_t>(state.range(0)), 1);
  std::vector<double> ws, ys;
  for (const auto& o : g.sample.observations) {
    ws.push_back(o.w);
    ys.push_back(o.x);
  }
  for (auto _ : state) {
    auto fit = rctsim::fit_logistic(ws, ys);
    benchmark::DoNotOptimize(fit);
  }
}
BENCHMARK(BM_LogisticIrls)->Arg(200)->Arg(5000)->Unit(benchmark::kMicrosecond);

void BM_HtAte(benchmark::State& state) {
  const auto g = make_sample(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rctsim::ht_ate(g.sample));
}
BENCHMARK(BM_HtAte)->Arg(5000);

void BM_AdjustedHtCrossfit(benchmark::State& state) {
  const auto g = make_sample(static_cast<std::size_t>(state.range(0)), 3);
  const auto plan = rctsim::CrossFitPlan::two_fold_halves(g.sample.size());
  rctsim::AdjustedHtOptions options;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rctsim::adjusted_ht_ate(g.sample, plan, options));
  }
}
BENCHMARK(BM_AdjustedHtCrossfit)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
