#include "rulefront/rolling.hpp"

#include <algorithm>
#include <string>

#include "rulefront/errors.hpp"

namespace rulefront {

std::string to_string(const WindowSpec& spec) {
  std::string out = "train " + std::to_string(spec.train_start_year) + "-" +
                    std::to_string(spec.train_end_year) + " test " +
                    std::to_string(spec.test_start_year);
  if (spec.test_end_year != spec.test_start_year) {
    out += "-" + std::to_string(spec.test_end_year);
  }
  return out;
}

std::vector<WindowSpec> make_windows(int first_train_year, int last_test_year, int train_years,
                                     int test_years) {
  if (train_years < 1 || test_years < 1) {
    throw InvalidSpanError("train and test spans must be >= 1 year");
  }
  std::vector<WindowSpec> windows;
  for (int start = first_train_year;; start += test_years) {
    WindowSpec spec;
    spec.train_start_year = start;
    spec.train_end_year = start + train_years - 1;
    spec.test_start_year = spec.train_end_year + 1;
    spec.test_end_year = spec.test_start_year + test_years - 1;
    if (spec.test_end_year > last_test_year) break;
    windows.push_back(spec);
  }
  if (windows.empty()) {
    throw InvalidSpanError("no window fits between " + std::to_string(first_train_year) +
                           " and " + std::to_string(last_test_year));
  }
  return windows;
}

PeriodContext make_period_context(const OhlcSeries& series, int start_year, int end_year,
                                  const IndicatorParams& params) {
  const Date period_first{start_year, 1, 1};
  const Date period_last{end_year, 12, 31};
  const Date leadin_first = from_serial(to_serial(period_first) - kLeadInCalendarDays);

  PeriodContext context;
  context.bars = slice_date_range(series, leadin_first, period_last);
  std::size_t start = 0;
  while (start < context.bars.size() && context.bars.bars[start].date < period_first) {
    ++start;
  }
  if (start == context.bars.size()) {
    throw EmptySeriesError("no bars in years " + std::to_string(start_year) + "-" +
                           std::to_string(end_year));
  }
  context.period_start = start;
  context.signals = build_signal_matrix(context.bars, params);
  return context;
}

FitnessReport evaluate_in_period(const Genome& genome, const PeriodContext& context,
                                 const BacktestOptions& options) {
  // Signals come from the extended series so indicators are warm on day one,
  // but scoring sees only in-period rows: the position series starts flat at
  // period_start and every return is between in-period closes.
  const auto rules = decode(genome);
  std::vector<FinalSignal> in_period;
  in_period.reserve(context.period_days());
  for (std::size_t t = context.period_start; t < context.bars.size(); ++t) {
    in_period.push_back(eval_day(rules, context.signals, t));
  }

  std::vector<double> closes;
  closes.reserve(context.period_days());
  for (std::size_t t = context.period_start; t < context.bars.size(); ++t) {
    closes.push_back(context.bars.bars[t].close);
  }

  const auto positions = positions_from_signals(in_period, options.hold_policy);
  const auto ledger =
      make_ledger(returns_from_closes(closes), positions, options.cost_rate);
  return fitness_from_ledger(ledger, options.vol_basis);
}

WindowReport run_window(const OhlcSeries& series, const WindowSpec& spec,
                        const RunConfig& config) {
  const PeriodContext train =
      make_period_context(series, spec.train_start_year, spec.train_end_year, config.indicators);

  const FitnessFn fitness = [&](const Genome& genome) {
    const FitnessReport report = evaluate_in_period(genome, train, config.backtest);
    return ObjectiveVector{report.sharpe, report.max_drawdown};
  };
  const Population front = evolve(fitness, config.evolve);

  const PeriodContext test =
      make_period_context(series, spec.test_start_year, spec.test_end_year, config.indicators);

  WindowReport report;
  report.spec = spec;
  report.strategies.reserve(front.size());
  for (const auto& ind : front) {
    StrategyRecord record;
    record.genome = ind.genome.to_string();
    const StrategyRules rules = decode(ind.genome);
    record.buy_rule = render_rule(rules.buy, "buy");
    record.sell_rule = render_rule(rules.sell, "sell");
    record.in_sample = evaluate_in_period(ind.genome, train, config.backtest);
    record.out_sample = evaluate_in_period(ind.genome, test, config.backtest);
    report.strategies.push_back(std::move(record));
  }
  std::stable_sort(report.strategies.begin(), report.strategies.end(),
                   [](const StrategyRecord& a, const StrategyRecord& b) {
                     if (a.in_sample.sharpe != b.in_sample.sharpe) {
                       return a.in_sample.sharpe < b.in_sample.sharpe;
                     }
                     return a.genome < b.genome;
                   });
  return report;
}

std::vector<WindowReport> run_all(const OhlcSeries& series,
                                  const std::vector<WindowSpec>& windows,
                                  const RunConfig& config) {
  std::vector<WindowReport> reports;
  reports.reserve(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    RunConfig window_config = config;
    window_config.evolve.seed = config.evolve.seed + i;
    try {
      reports.push_back(run_window(series, windows[i], window_config));
    } catch (const std::exception& e) {
      throw RollingError(to_string(windows[i]) + ": " + e.what());
    }
  }
  return reports;
}

}  // namespace rulefront
