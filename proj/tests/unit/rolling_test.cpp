#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "rulefront/backtest.hpp"
#include "rulefront/date.hpp"
#include "rulefront/errors.hpp"
#include "rulefront/genome.hpp"
#include "rulefront/rng.hpp"
#include "rulefront/rolling.hpp"
#include "support/synthetic.hpp"

using namespace rulefront;
namespace rt = rulefront::testing;

namespace {

RunConfig quick_config() {
  RunConfig config;
  config.evolve.population_size = 10;
  config.evolve.generations = 3;
  config.evolve.seed = 7;
  return config;
}

std::vector<std::string> genome_strings(const WindowReport& report) {
  std::vector<std::string> out;
  out.reserve(report.strategies.size());
  for (const auto& s : report.strategies) out.push_back(s.genome);
  return out;
}

}  // namespace

TEST_CASE("window schedule covers 2003 through 2015 in eleven steps") {
  const auto windows = make_windows(2003, 2015);
  REQUIRE(windows.size() == 11);
  CHECK(windows.front() == WindowSpec{2003, 2004, 2005, 2005});
  CHECK(windows[1] == WindowSpec{2004, 2005, 2006, 2006});
  CHECK(windows.back() == WindowSpec{2013, 2014, 2015, 2015});
}

TEST_CASE("window schedule respects custom spans") {
  const auto windows = make_windows(2003, 2010, 3, 2);
  REQUIRE(windows.size() == 2);
  CHECK(windows[0] == WindowSpec{2003, 2005, 2006, 2007});
  CHECK(windows[1] == WindowSpec{2005, 2007, 2008, 2009});

  const auto tight = make_windows(2003, 2006, 3, 1);
  REQUIRE(tight.size() == 1);
  CHECK(tight[0] == WindowSpec{2003, 2005, 2006, 2006});
}

TEST_CASE("window schedule rejects impossible requests") {
  CHECK_THROWS_AS(make_windows(2003, 2003), InvalidSpanError);
  CHECK_THROWS_AS(make_windows(2003, 2010, 0, 1), InvalidSpanError);
  CHECK_THROWS_AS(make_windows(2003, 2010, 2, 0), InvalidSpanError);
  CHECK_THROWS_AS(make_windows(2010, 2003), InvalidSpanError);
}

TEST_CASE("window labels name the train and test spans") {
  CHECK(to_string(WindowSpec{2003, 2004, 2005, 2005}) == "train 2003-2004 test 2005");
  CHECK(to_string(WindowSpec{2003, 2005, 2006, 2007}) == "train 2003-2005 test 2006-2007");
}

TEST_CASE("period context pulls at most sixty calendar days of lead-in") {
  const auto series = rt::multi_year_series(5, 2003, 2008);
  const auto context = make_period_context(series, 2005, 2006);

  REQUIRE(context.period_start > 0);
  const Date first_in_period = context.bars.bars[context.period_start].date;
  CHECK(first_in_period.year == 2005);
  const Date first_leadin = context.bars.bars[0].date;
  CHECK(first_leadin.year == 2004);
  // measured from the period boundary, not from the first trading day in it
  CHECK(to_serial({2005, 1, 1}) - to_serial(first_leadin) <= kLeadInCalendarDays);

  const Date last = context.bars.bars.back().date;
  CHECK(last.year == 2006);
  CHECK(context.period_days() ==
        slice_by_years(series, 2005, 2006).size());
  CHECK(context.signals.days() == context.bars.size());
}

TEST_CASE("period context at the start of the data has no lead-in") {
  const auto series = rt::multi_year_series(5, 2003, 2008);
  const auto context = make_period_context(series, 2003, 2004);
  CHECK(context.period_start == 0);
  CHECK(context.bars.bars.front().date.year == 2003);
}

TEST_CASE("period context requires bars inside the period") {
  const auto series = rt::multi_year_series(5, 2003, 2008);
  CHECK_THROWS_AS(make_period_context(series, 2011, 2012), EmptySeriesError);
}

TEST_CASE("in-period evaluation matches a hand-built pipeline") {
  const auto series = rt::multi_year_series(9, 2003, 2007);
  const auto context = make_period_context(series, 2005, 2005);
  Rng rng(41);
  for (int i = 0; i < 10; ++i) {
    const Genome g = random_genome(rng);
    const FitnessReport got = evaluate_in_period(g, context);

    const auto all_signals = signal_series(g, context.signals);
    const std::vector<FinalSignal> in_period(all_signals.begin() + context.period_start,
                                             all_signals.end());
    const auto positions = positions_from_signals(in_period, HoldPolicy::flat);
    OhlcSeries period_bars;
    period_bars.bars.assign(context.bars.bars.begin() + context.period_start,
                            context.bars.bars.end());
    const auto ledger = net_returns(period_bars, positions, 0.02);
    const FitnessReport want = fitness_from_ledger(ledger, VolBasis::net);
    CHECK(got.sharpe == want.sharpe);
    CHECK(got.max_drawdown == want.max_drawdown);
    CHECK(got.annualized_return == want.annualized_return);
    CHECK(got.annualized_vol == want.annualized_vol);
    CHECK(got.total_turnover == want.total_turnover);
  }
}

TEST_CASE("lead-in wakes indicators that would otherwise be masked") {
  const auto series = rt::multi_year_series(9, 2003, 2007);
  const auto with_leadin = make_period_context(series, 2005, 2005);

  // rebuild the same period without any prior data
  const OhlcSeries bare = slice_by_years(series, 2005, 2005);
  const auto bare_matrix = build_signal_matrix(bare);

  // the slow SMA cross needs 41 bars: masked at the period start without
  // lead-in, defined with it
  const std::size_t offset = with_leadin.period_start;
  CHECK(!bare_matrix.defined(0, IndicatorKind::sma_cross));
  CHECK(with_leadin.signals.defined(offset, IndicatorKind::sma_cross));
}

TEST_CASE("corrupting the test year leaves the evolved front untouched") {
  const auto base = rt::multi_year_series(14, 2003, 2006);
  const WindowSpec spec{2003, 2004, 2005, 2005};

  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    RunConfig config = quick_config();
    config.evolve.seed = seed;
    const WindowReport clean = run_window(base, spec, config);

    OhlcSeries corrupted = base;
    for (auto& bar : corrupted.bars) {
      if (bar.date.year < 2005) continue;
      bar.open *= 1.9;
      bar.high *= 2.1;
      bar.low *= 1.7;
      bar.close *= 2.0;
    }
    const WindowReport shifted = run_window(corrupted, spec, config);

    REQUIRE(genome_strings(shifted) == genome_strings(clean));
    for (std::size_t i = 0; i < clean.strategies.size(); ++i) {
      CHECK(shifted.strategies[i].in_sample.sharpe == clean.strategies[i].in_sample.sharpe);
      CHECK(shifted.strategies[i].in_sample.max_drawdown ==
            clean.strategies[i].in_sample.max_drawdown);
    }
  }
}

TEST_CASE("run_window reports sorted by in-sample sharpe") {
  const auto series = rt::multi_year_series(23, 2003, 2006);
  const WindowReport report = run_window(series, {2003, 2004, 2005, 2005}, quick_config());
  REQUIRE(!report.strategies.empty());
  for (std::size_t i = 1; i < report.strategies.size(); ++i) {
    CHECK(report.strategies[i - 1].in_sample.sharpe <= report.strategies[i].in_sample.sharpe);
  }
  for (const auto& s : report.strategies) {
    CHECK(s.genome.size() == Genome::kBits);
    CHECK(s.buy_rule.rfind("IF ", 0) == 0);
    CHECK(s.sell_rule.rfind("IF ", 0) == 0);
  }
  // the front is duplicate-free
  const std::vector<std::string> genomes = genome_strings(report);
  const std::set<std::string> keys(genomes.begin(), genomes.end());
  CHECK(keys.size() == report.strategies.size());
}

TEST_CASE("run_all seeds windows independently and in order") {
  const auto series = rt::multi_year_series(31, 2003, 2008);
  const auto windows = make_windows(2003, 2008);
  REQUIRE(windows.size() == 4);

  RunConfig config = quick_config();
  const auto reports = run_all(series, windows, config);
  REQUIRE(reports.size() == windows.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].spec == windows[i]);

    RunConfig solo = config;
    solo.evolve.seed = config.evolve.seed + i;
    const WindowReport alone = run_window(series, windows[i], solo);
    CHECK(genome_strings(reports[i]) == genome_strings(alone));
  }
}

TEST_CASE("run_all names the window that failed") {
  const auto series = rt::multi_year_series(31, 2003, 2006);
  const std::vector<WindowSpec> windows = {{2003, 2004, 2005, 2005},
                                           {2009, 2010, 2011, 2011}};
  try {
    run_all(series, windows, quick_config());
    FAIL("expected RollingError");
  } catch (const RollingError& e) {
    const std::string what = e.what();
    CHECK(what.find("train 2009-2010 test 2011") != std::string::npos);
  }
}
