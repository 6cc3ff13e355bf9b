#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulefront/market_data.hpp"

namespace rulefront {

// Canonical indicator order. The first four form the momentum group, the
// remaining five the mean-reversion group; genome layout and rule grouping
// depend on this order, so it must not change.
enum class IndicatorKind : int {
  sma_cross = 0,
  macd = 1,
  momentum = 2,
  price_osc = 3,
  stochastic = 4,
  rsi = 5,
  cci = 6,
  williams = 7,
  bollinger = 8,
};

inline constexpr std::size_t kIndicatorCount = 9;
inline constexpr std::size_t kMomentumGroupSize = 4;

// Short display name used in rendered rules and CSV headers.
std::string_view indicator_short_name(IndicatorKind kind);

// Window lengths and thresholds. Defaults are the classic parameterisations;
// the engine treats them as fixed but they are grouped here so experiments
// can vary them in one place.
struct IndicatorParams {
  int sma_fast = 9;
  int sma_slow = 40;

  int macd_fast = 12;
  int macd_slow = 26;
  int macd_signal = 9;

  int momentum_lag = 10;

  int price_osc_fast = 10;
  int price_osc_slow = 20;

  int stochastic_window = 14;
  int stochastic_smooth = 3;
  double stochastic_low = 20.0;
  double stochastic_high = 80.0;

  int rsi_window = 14;
  double rsi_low = 30.0;
  double rsi_high = 70.0;

  int cci_window = 20;
  double cci_scale = 0.015;
  double cci_level = 100.0;

  int williams_window = 14;
  double williams_low = -80.0;
  double williams_high = -20.0;

  int bollinger_window = 20;
  double bollinger_width = 3.0;
};

// A value series with an explicit warm-up mask. values[t] is meaningful only
// where defined[t] != 0.
struct ValueSeries {
  std::vector<double> values;
  std::vector<std::uint8_t> defined;

  std::size_t size() const { return values.size(); }
};

// Simple moving average over the last n observations (inclusive of t);
// undefined for t < n - 1.
ValueSeries sma(std::span<const double> values, int n);

// Exponential moving average with smoothing 2 / (n + 1), seeded with the
// first observation, so it is defined from t = 0.
std::vector<double> ema(std::span<const double> values, int n);

ValueSeries rolling_max(std::span<const double> values, int n);
ValueSeries rolling_min(std::span<const double> values, int n);

// Population standard deviation over the last n observations.
ValueSeries rolling_stddev(std::span<const double> values, int n);

// Per-day buy/sell flags for one indicator. A day is masked (defined = 0)
// while any input the signal needs, at t or t - 1, is still warming up;
// masked days never carry a flag. buy[t] and sell[t] are never both set.
struct SignalColumn {
  std::vector<std::uint8_t> buy;
  std::vector<std::uint8_t> sell;
  std::vector<std::uint8_t> defined;

  std::size_t size() const { return buy.size(); }
};

SignalColumn sma_cross_signals(const OhlcSeries& series, const IndicatorParams& params = {});
SignalColumn macd_signals(const OhlcSeries& series, const IndicatorParams& params = {});
SignalColumn momentum_signals(const OhlcSeries& series, const IndicatorParams& params = {});
SignalColumn price_osc_signals(const OhlcSeries& series, const IndicatorParams& params = {});
SignalColumn stochastic_signals(const OhlcSeries& series, const IndicatorParams& params = {});
SignalColumn rsi_signals(const OhlcSeries& series, const IndicatorParams& params = {});
SignalColumn cci_signals(const OhlcSeries& series, const IndicatorParams& params = {});
SignalColumn williams_signals(const OhlcSeries& series, const IndicatorParams& params = {});
SignalColumn bollinger_signals(const OhlcSeries& series, const IndicatorParams& params = {});

SignalColumn indicator_signals(IndicatorKind kind, const OhlcSeries& series,
                               const IndicatorParams& params = {});

// All nine indicator columns for one series, row-aligned with the bars.
class SignalMatrix {
 public:
  SignalMatrix() = default;
  SignalMatrix(std::size_t days, std::array<SignalColumn, kIndicatorCount> columns);

  std::size_t days() const { return days_; }

  bool buy(std::size_t t, IndicatorKind kind) const {
    return column(kind).buy[t] != 0;
  }
  bool sell(std::size_t t, IndicatorKind kind) const {
    return column(kind).sell[t] != 0;
  }
  bool defined(std::size_t t, IndicatorKind kind) const {
    return column(kind).defined[t] != 0;
  }

  const SignalColumn& column(IndicatorKind kind) const {
    return columns_[static_cast<std::size_t>(kind)];
  }

 private:
  std::size_t days_ = 0;
  std::array<SignalColumn, kIndicatorCount> columns_;
};

// Number of bars required before every indicator can emit at least one
// signal with the given parameters.
std::size_t min_series_length(const IndicatorParams& params = {});

// Builds the full matrix. Throws SeriesTooShort when the series cannot cover
// the longest warm-up (40 bars for the default slow SMA) plus a signal day.
SignalMatrix build_signal_matrix(const OhlcSeries& series, const IndicatorParams& params = {});

// CSV dump of the matrix: Date column plus an 18-column boolean block,
// <name>_buy and <name>_sell per indicator in canonical order. Masked days
// read 0.
std::string signal_matrix_to_csv(const SignalMatrix& matrix, const OhlcSeries& series);

}  // namespace rulefront
