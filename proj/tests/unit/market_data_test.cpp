#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rulefront/errors.hpp"
#include "rulefront/market_data.hpp"
#include "support/synthetic.hpp"
#include "support/temp_file.hpp"

using namespace rulefront;
using rulefront::testing::TempFile;

TEST_CASE("date parsing accepts only strict ISO dates") {
  const auto d = parse_date("2013-05-07");
  REQUIRE(d.has_value());
  CHECK(d->year == 2013);
  CHECK(d->month == 5);
  CHECK(d->day == 7);

  CHECK(parse_date("2012-02-29").has_value());   // leap year
  CHECK(!parse_date("2013-02-29").has_value());  // not a leap year
  CHECK(!parse_date("2013-13-01").has_value());
  CHECK(!parse_date("2013-00-10").has_value());
  CHECK(!parse_date("2013-04-31").has_value());
  CHECK(!parse_date("2013/05/07").has_value());
  CHECK(!parse_date("13-05-07").has_value());
  CHECK(!parse_date("2013-5-7").has_value());
  CHECK(!parse_date("").has_value());
}

TEST_CASE("serial day conversion round-trips and knows weekdays") {
  CHECK(to_serial(Date{1970, 1, 1}) == 0);
  for (std::int64_t s : {-100000L, -1L, 0L, 1L, 15000L, 20000L}) {
    CHECK(to_serial(from_serial(s)) == s);
  }
  CHECK(weekday(Date{2010, 1, 4}) == 1);  // Monday
  CHECK(is_weekend(Date{2010, 1, 2}));
  CHECK(is_weekend(Date{2010, 1, 3}));
  CHECK(!is_weekend(Date{2010, 1, 4}));
}

TEST_CASE("load_ohlc reads a plain CSV") {
  TempFile file(
      "Date,Open,High,Low,Close\n"
      "2013-01-02,10,12,9,11\n"
      "2013-01-03,11,11.5,10.5,11.2\n");
  LoadStats stats;
  const auto series = load_ohlc(file.path(), &stats);
  REQUIRE(series.size() == 2);
  CHECK(stats.dropped_rows == 0);
  CHECK(series.bars[0].date == Date{2013, 1, 2});
  CHECK(series.bars[0].open == 10.0);
  CHECK(series.bars[0].high == 12.0);
  CHECK(series.bars[0].low == 9.0);
  CHECK(series.bars[0].close == 11.0);
  CHECK(series.bars[1].close == 11.2);
}

TEST_CASE("header matching is case-insensitive, trimmed, order-free") {
  TempFile file(
      "close , LOW ,Volume, high ,DATE, open ,AdjClose\n"
      "11,9,123456,12,2013-01-02,10,10.9\n");
  const auto series = load_ohlc(file.path());
  REQUIRE(series.size() == 1);
  CHECK(series.bars[0].open == 10.0);
  CHECK(series.bars[0].high == 12.0);
  CHECK(series.bars[0].low == 9.0);
  CHECK(series.bars[0].close == 11.0);
}

TEST_CASE("CRLF line endings are tolerated") {
  TempFile file("Date,Open,High,Low,Close\r\n2013-01-02,10,12,9,11\r\n");
  const auto series = load_ohlc(file.path());
  REQUIRE(series.size() == 1);
  CHECK(series.bars[0].close == 11.0);
}

TEST_CASE("missing file names the path") {
  try {
    load_ohlc("/nonexistent/quotes.csv");
    FAIL("expected FileNotFound");
  } catch (const FileNotFoundError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/quotes.csv") != std::string::npos);
  }
}

TEST_CASE("missing required column is a MalformedHeader") {
  TempFile file("Date,Open,High,Low\n2013-01-02,10,12,9\n");
  CHECK_THROWS_AS(load_ohlc(file.path()), MalformedHeaderError);
}

TEST_CASE("rows with missing or non-numeric prices are dropped and counted") {
  TempFile file(
      "Date,Open,High,Low,Close\n"
      "2013-01-02,10,12,9,11\n"
      "2013-01-03,,12,9,11\n"
      "2013-01-04,10,n/a,9,11\n"
      "not-a-date,10,12,9,11\n"
      "2013-01-07,10,12\n"
      "2013-01-08,10,12,9,11\n");
  LoadStats stats;
  const auto series = load_ohlc(file.path(), &stats);
  CHECK(series.size() == 2);
  CHECK(stats.dropped_rows == 4);
}

TEST_CASE("contradictory OHLC rows fail loudly") {
  TempFile low_above_high(
      "Date,Open,High,Low,Close\n"
      "2013-01-02,10,9,12,11\n");
  CHECK_THROWS_AS(load_ohlc(low_above_high.path()), MalformedRowError);

  TempFile close_outside(
      "Date,Open,High,Low,Close\n"
      "2013-01-02,10,12,9,13\n");
  CHECK_THROWS_AS(load_ohlc(close_outside.path()), MalformedRowError);

  TempFile negative_price(
      "Date,Open,High,Low,Close\n"
      "2013-01-02,-10,12,-12,11\n");
  CHECK_THROWS_AS(load_ohlc(negative_price.path()), MalformedRowError);
}

TEST_CASE("dates must be strictly increasing") {
  TempFile out_of_order(
      "Date,Open,High,Low,Close\n"
      "2013-01-03,10,12,9,11\n"
      "2013-01-02,10,12,9,11\n");
  CHECK_THROWS_AS(load_ohlc(out_of_order.path()), NonMonotoneDatesError);

  TempFile duplicate(
      "Date,Open,High,Low,Close\n"
      "2013-01-02,10,12,9,11\n"
      "2013-01-02,10,12,9,11\n");
  CHECK_THROWS_AS(load_ohlc(duplicate.path()), NonMonotoneDatesError);
}

TEST_CASE("a file with no usable rows is an EmptySeries") {
  TempFile header_only("Date,Open,High,Low,Close\n");
  CHECK_THROWS_AS(load_ohlc(header_only.path()), EmptySeriesError);
}

TEST_CASE("load is idempotent through a write round-trip") {
  const auto series = testing::random_walk_series(7, 120);
  TempFile file(testing::series_to_csv(series));
  const auto reloaded = load_ohlc(file.path());
  REQUIRE(reloaded.size() == series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(reloaded.bars[i].date == series.bars[i].date);
    // the csv keeps six decimals, so the first pass may quantize
    CHECK(std::abs(reloaded.bars[i].open - series.bars[i].open) <= 5e-7);
    CHECK(std::abs(reloaded.bars[i].close - series.bars[i].close) <= 5e-7);
  }

  // after quantizing once, another round trip must be exact
  TempFile again(testing::series_to_csv(reloaded));
  const auto twice = load_ohlc(again.path());
  REQUIRE(twice.size() == reloaded.size());
  for (std::size_t i = 0; i < reloaded.size(); ++i) {
    CHECK(twice.bars[i].open == reloaded.bars[i].open);
    CHECK(twice.bars[i].high == reloaded.bars[i].high);
    CHECK(twice.bars[i].low == reloaded.bars[i].low);
    CHECK(twice.bars[i].close == reloaded.bars[i].close);
  }
}

TEST_CASE("slice_by_years keeps exactly the requested years") {
  const auto series = testing::multi_year_series(3, 2003, 2006);
  const auto sliced = slice_by_years(series, 2004, 2005);
  REQUIRE(!sliced.empty());
  CHECK(sliced.bars.front().date.year == 2004);
  CHECK(sliced.bars.back().date.year == 2005);
  for (const auto& bar : sliced.bars) {
    CHECK(bar.date.year >= 2004);
    CHECK(bar.date.year <= 2005);
  }
}

TEST_CASE("year slices partition the series") {
  const auto series = testing::multi_year_series(11, 2003, 2005);
  OhlcSeries rebuilt;
  for (int year = 2003; year <= 2005; ++year) {
    const auto part = slice_by_years(series, year, year);
    rebuilt.bars.insert(rebuilt.bars.end(), part.bars.begin(), part.bars.end());
  }
  REQUIRE(rebuilt.size() == series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(rebuilt.bars[i].date == series.bars[i].date);
    CHECK(rebuilt.bars[i].close == series.bars[i].close);
  }
}

TEST_CASE("slicing outside the data is an EmptySeries") {
  const auto series = testing::multi_year_series(5, 2003, 2004);
  CHECK_THROWS_AS(slice_by_years(series, 2010, 2011), EmptySeriesError);
}

TEST_CASE("slice_date_range is inclusive on both ends") {
  const auto series = testing::multi_year_series(9, 2003, 2003);
  const Date from = series.bars[10].date;
  const Date to = series.bars[20].date;
  const auto sliced = slice_date_range(series, from, to);
  REQUIRE(sliced.size() == 11);
  CHECK(sliced.bars.front().date == from);
  CHECK(sliced.bars.back().date == to);
}
