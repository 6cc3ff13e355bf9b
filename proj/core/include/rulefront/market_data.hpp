#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "rulefront/date.hpp"

namespace rulefront {

struct OhlcBar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
};

// Daily bars in strictly increasing date order, all prices positive and
// low <= open/close <= high. load_ohlc and the slice helpers maintain the
// invariants; code that builds a series by hand is expected to as well.
struct OhlcSeries {
  std::vector<OhlcBar> bars;

  std::size_t size() const { return bars.size(); }
  bool empty() const { return bars.empty(); }
};

struct LoadStats {
  std::size_t dropped_rows = 0;
};

// Reads a daily OHLC CSV. The header must contain Date, Open, High, Low and
// Close (case-insensitive, surrounding whitespace ignored); extra columns are
// ignored. Rows with a missing or non-numeric required field are dropped and
// counted in stats. Rows that parse but violate the price invariants are
// treated as corrupt data and rejected with MalformedRow.
OhlcSeries load_ohlc(const std::filesystem::path& path, LoadStats* stats = nullptr);

std::vector<double> closes_of(const OhlcSeries& series);
std::vector<double> highs_of(const OhlcSeries& series);
std::vector<double> lows_of(const OhlcSeries& series);

// Bars with start_year <= date.year <= end_year. Throws EmptySeries if no
// bar falls in the range.
OhlcSeries slice_by_years(const OhlcSeries& series, int start_year, int end_year);

// Bars with from <= date <= to. May return an empty series.
OhlcSeries slice_date_range(const OhlcSeries& series, const Date& from, const Date& to);

}  // namespace rulefront
