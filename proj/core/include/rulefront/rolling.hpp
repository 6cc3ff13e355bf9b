#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rulefront/backtest.hpp"
#include "rulefront/indicators.hpp"
#include "rulefront/market_data.hpp"
#include "rulefront/nsga2.hpp"

namespace rulefront {

// How much history before a window may feed indicator warm-up. Earlier data
// only; scoring never leaves the window itself.
inline constexpr int kLeadInCalendarDays = 60;

struct WindowSpec {
  int train_start_year = 0;
  int train_end_year = 0;
  int test_start_year = 0;
  int test_end_year = 0;

  bool operator==(const WindowSpec&) const = default;
};

std::string to_string(const WindowSpec& spec);

// Anchored at first_train_year, advancing by test_years: train on
// [y, y + train_years), test on the following test_years. Windows whose test
// span would pass last_test_year are not emitted. Throws InvalidSpan when no
// window fits or a length is < 1.
std::vector<WindowSpec> make_windows(int first_train_year, int last_test_year,
                                     int train_years = 2, int test_years = 1);

// Bars of one evaluation period plus the signal matrix computed over the
// period extended backwards by the lead-in. period_start indexes the first
// in-period row of the matrix; everything before it is warm-up context only.
struct PeriodContext {
  OhlcSeries bars;            // lead-in + period
  SignalMatrix signals;       // aligned with bars
  std::size_t period_start = 0;

  std::size_t period_days() const { return bars.size() - period_start; }
};

PeriodContext make_period_context(const OhlcSeries& series, int start_year, int end_year,
                                  const IndicatorParams& params = {});

// Scores a genome strictly inside the context's period: signals may warm up
// on the lead-in, but positions start flat at the period boundary and every
// scored return lies inside it.
FitnessReport evaluate_in_period(const Genome& genome, const PeriodContext& context,
                                 const BacktestOptions& options = {});

struct StrategyRecord {
  std::string genome;
  std::string buy_rule;
  std::string sell_rule;
  FitnessReport in_sample;
  FitnessReport out_sample;
};

struct WindowReport {
  WindowSpec spec;
  std::vector<StrategyRecord> strategies;  // in-sample Sharpe ascending
};

struct RunConfig {
  EvolveParams evolve;
  BacktestOptions backtest;
  IndicatorParams indicators;
  int train_years = 2;
  int test_years = 1;
};

// Evolves on the train span and re-scores the resulting front on the test
// span. The genome set is determined by the train data and the seed alone.
WindowReport run_window(const OhlcSeries& series, const WindowSpec& spec,
                        const RunConfig& config);

// All windows in order, window i seeded with config.evolve.seed + i. A
// failing window aborts the run with the window named in the error.
std::vector<WindowReport> run_all(const OhlcSeries& series,
                                  const std::vector<WindowSpec>& windows,
                                  const RunConfig& config);

}  // namespace rulefront
