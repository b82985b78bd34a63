#include <benchmark/benchmark.h>

#include "haccv/cvll.hpp"
#include "haccv/dgp.hpp"
#include "haccv/lrv.hpp"
#include "haccv/regress.hpp"
#include "haccv/varfit.hpp"

namespace {

using namespace haccv;

MomentSeries make_series(int n) {
  ArSpec spec{0.0, {0.6}, 1.0};
  std::vector<SeriesSpec> regressors(3, spec);
  RegressionDataset data =
      make_dataset(regressors, spec, Eigen::VectorXd::Zero(4), n, 42, 0);
  OlsFit fit = ols_fit(data);
  return moment_series(fit, data.X);
}

void BM_EstimateAm(benchmark::State& state) {
  MomentSeries V = make_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_am(V));
}
BENCHMARK(BM_EstimateAm)->Arg(100)->Arg(200)->Arg(500);

void BM_EstimateAmPw(benchmark::State& state) {
  MomentSeries V = make_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_am_pw(V));
}
BENCHMARK(BM_EstimateAmPw)->Arg(100)->Arg(200)->Arg(500);

void BM_BurgVar(benchmark::State& state) {
  MomentSeries V = make_series(500);
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(burg_var(V.V, q));
}
BENCHMARK(BM_BurgVar)->Arg(1)->Arg(2)->Arg(3);

void BM_EstimateCvll(benchmark::State& state) {
  MomentSeries V = make_series(static_cast<int>(state.range(0)));
  CandidateGrid grid;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_cvll(V, grid));
}
BENCHMARK(BM_EstimateCvll)->Arg(100)->Arg(200);

void BM_CvllPerFrequencyRefit(benchmark::State& state) {
  MomentSeries V = make_series(static_cast<int>(state.range(0)));
  CandidateGrid grid;
  grid.refit = LooRefitPolicy::kPerFrequency;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_cvll(V, grid));
}
BENCHMARK(BM_CvllPerFrequencyRefit)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
