#include <benchmark/benchmark.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "rulefront/backtest.hpp"
#include "rulefront/genome.hpp"
#include "rulefront/indicators.hpp"
#include "rulefront/market_data.hpp"
#include "rulefront/nsga2.hpp"
#include "rulefront/rng.hpp"

namespace {

using namespace rulefront;

OhlcSeries walk(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  OhlcSeries series;
  series.bars.reserve(n);
  Date date{2003, 1, 6};
  double price = 1000.0;
  for (std::size_t i = 0; i < n; ++i) {
    while (is_weekend(date)) date = from_serial(to_serial(date) + 1);
    price *= 1.0 + (rng.uniform_real() - 0.495) * 0.02;
    const double high = price * (1.0 + rng.uniform_real() * 0.005);
    const double low = price * (1.0 - rng.uniform_real() * 0.005);
    series.bars.push_back({date, price, high, low, price});
    date = from_serial(to_serial(date) + 1);
  }
  return series;
}

void bm_signal_matrix(benchmark::State& state) {
  const OhlcSeries series = walk(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_signal_matrix(series));
  }
}
BENCHMARK(bm_signal_matrix)->Arg(252)->Arg(1260)->Arg(3276);

void bm_evaluate_strategy(benchmark::State& state) {
  const OhlcSeries series = walk(2, 504);
  const SignalMatrix matrix = build_signal_matrix(series);
  Rng rng(3);
  const Genome genome = random_genome(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_strategy(genome, series, matrix));
  }
}
BENCHMARK(bm_evaluate_strategy);

void bm_nondominated_sort(benchmark::State& state) {
  Rng rng(4);
  Population pop(static_cast<std::size_t>(state.range(0)));
  for (auto& ind : pop) {
    ind.objectives.sharpe = rng.uniform_real() * 4.0 - 1.0;
    ind.objectives.max_drawdown = -rng.uniform_real();
  }
  for (auto _ : state) {
    Population copy = pop;
    benchmark::DoNotOptimize(fast_nondominated_sort(copy));
  }
}
BENCHMARK(bm_nondominated_sort)->Arg(30)->Arg(60)->Arg(200);

void bm_evolve(benchmark::State& state) {
  const OhlcSeries series = walk(5, 504);
  const SignalMatrix matrix = build_signal_matrix(series);
  const FitnessFn fitness = [&](const Genome& g) {
    const FitnessReport r = evaluate_strategy(g, series, matrix);
    return ObjectiveVector{r.sharpe, r.max_drawdown};
  };
  EvolveParams params;
  params.population_size = 20;
  params.generations = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(fitness, params));
  }
}
BENCHMARK(bm_evolve);

}  // namespace

BENCHMARK_MAIN();
