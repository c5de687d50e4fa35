#include <benchmark/benchmark.h>

#include <random>

#include "scorecast/regress.hpp"

namespace scorecast {
namespace {

struct Problem {
  Matrix x;
  std::vector<double> y;
};

/// Rows shaped like the lineup-stats matrices: 52 columns, small integer targets.
Problem make_problem(std::size_t rows) {
  std::mt19937 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  std::poisson_distribution<int> goals(1.4);
  Problem p{Matrix(rows, 52), {}};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < 52; ++c) p.x(r, c) = n(rng);
    p.y.push_back(goals(rng));
  }
  return p;
}

void BM_Fit(benchmark::State& state, Technique technique) {
  const Problem p = make_problem(static_cast<std::size_t>(state.range(0)));
  RegressorSpec spec;
  spec.technique = technique;
  for (auto _ : state) benchmark::DoNotOptimize(fit(spec, p.x, p.y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Predict(benchmark::State& state, Technique technique) {
  const Problem p = make_problem(static_cast<std::size_t>(state.range(0)));
  RegressorSpec spec;
  spec.technique = technique;
  const TrainedModel model = fit(spec, p.x, p.y);
  for (auto _ : state) benchmark::DoNotOptimize(predict(model, p.x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK_CAPTURE(BM_Fit, lr, Technique::LR)->Arg(380)->Arg(1520);
BENCHMARK_CAPTURE(BM_Fit, knn, Technique::KNN)->Arg(380)->Arg(1520);
BENCHMARK_CAPTURE(BM_Fit, dtr, Technique::DTR)->Arg(380)->Arg(1520);
BENCHMARK_CAPTURE(BM_Fit, rfr, Technique::RFR)->Arg(380)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Fit, svr, Technique::SVR)->Arg(380)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Predict, knn, Technique::KNN)->Arg(380);
BENCHMARK_CAPTURE(BM_Predict, rfr, Technique::RFR)->Arg(380);

}  // namespace
}  // namespace scorecast
