#include "rulefront/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "rulefront/errors.hpp"

namespace rulefront {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

bool parse_price(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

struct ColumnIndex {
  std::size_t date, open, high, low, close;
};

ColumnIndex parse_header(std::string_view line) {
  const auto fields = split_csv_line(line);
  constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  std::size_t date = kMissing, open = kMissing, high = kMissing, low = kMissing,
              close = kMissing;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string name = lower(trim(fields[i]));
    if (name == "date" && date == kMissing) date = i;
    else if (name == "open" && open == kMissing) open = i;
    else if (name == "high" && high == kMissing) high = i;
    else if (name == "low" && low == kMissing) low = i;
    else if (name == "close" && close == kMissing) close = i;
  }
  std::string missing;
  auto note = [&](std::size_t idx, const char* name) {
    if (idx == kMissing) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  };
  note(date, "Date");
  note(open, "Open");
  note(high, "High");
  note(low, "Low");
  note(close, "Close");
  if (!missing.empty()) {
    throw MalformedHeaderError("missing column(s): " + missing);
  }
  return {date, open, high, low, close};
}

}  // namespace

OhlcSeries load_ohlc(const std::filesystem::path& path, LoadStats* stats) {
  std::ifstream in(path);
  if (!in.is_open()) {
    throw FileNotFoundError(path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw MalformedHeaderError("file is empty: " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const ColumnIndex cols = parse_header(line);

  OhlcSeries series;
  LoadStats local;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const auto fields = split_csv_line(line);
    const std::size_t needed =
        std::max({cols.date, cols.open, cols.high, cols.low, cols.close});
    if (fields.size() <= needed) {
      ++local.dropped_rows;
      continue;
    }

    OhlcBar bar;
    const auto date = parse_date(trim(fields[cols.date]));
    const bool prices_ok = parse_price(fields[cols.open], bar.open) &&
                           parse_price(fields[cols.high], bar.high) &&
                           parse_price(fields[cols.low], bar.low) &&
                           parse_price(fields[cols.close], bar.close);
    if (!date || !prices_ok) {
      ++local.dropped_rows;
      continue;
    }
    bar.date = *date;

    // A row that parses but contradicts itself is corrupt data, not a gap;
    // fail loudly rather than trade on it.
    if (bar.open <= 0 || bar.high <= 0 || bar.low <= 0 || bar.close <= 0) {
      throw MalformedRowError(line_no, "non-positive price");
    }
    if (bar.low > bar.high || bar.open < bar.low || bar.open > bar.high ||
        bar.close < bar.low || bar.close > bar.high) {
      throw MalformedRowError(line_no, "OHLC ordering violated");
    }

    series.bars.push_back(bar);
  }

  if (series.empty()) {
    throw EmptySeriesError("no usable rows in " + path.string());
  }
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (!(series.bars[i - 1].date < series.bars[i].date)) {
      throw NonMonotoneDatesError(to_string(series.bars[i].date) + " does not follow " +
                                  to_string(series.bars[i - 1].date));
    }
  }

  if (stats) *stats = local;
  return series;
}

std::vector<double> closes_of(const OhlcSeries& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& bar : series.bars) out.push_back(bar.close);
  return out;
}

std::vector<double> highs_of(const OhlcSeries& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& bar : series.bars) out.push_back(bar.high);
  return out;
}

std::vector<double> lows_of(const OhlcSeries& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& bar : series.bars) out.push_back(bar.low);
  return out;
}

OhlcSeries slice_by_years(const OhlcSeries& series, int start_year, int end_year) {
  if (start_year > end_year) {
    throw InvalidSpanError("start year " + std::to_string(start_year) + " after end year " +
                           std::to_string(end_year));
  }
  OhlcSeries out;
  for (const auto& bar : series.bars) {
    if (bar.date.year >= start_year && bar.date.year <= end_year) out.bars.push_back(bar);
  }
  if (out.empty()) {
    throw EmptySeriesError("no bars in years " + std::to_string(start_year) + "-" +
                           std::to_string(end_year));
  }
  return out;
}

OhlcSeries slice_date_range(const OhlcSeries& series, const Date& from, const Date& to) {
  OhlcSeries out;
  for (const auto& bar : series.bars) {
    if (!(bar.date < from) && !(to < bar.date)) out.bars.push_back(bar);
  }
  return out;
}

}  // namespace rulefront
