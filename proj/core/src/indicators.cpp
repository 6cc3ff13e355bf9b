#include "rulefront/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "rulefront/errors.hpp"

namespace rulefront {

namespace {

void require_window(int n) {
  if (n < 1) throw std::invalid_argument("window length must be >= 1");
}

SignalColumn make_column(std::size_t n) {
  SignalColumn col;
  col.buy.assign(n, 0);
  col.sell.assign(n, 0);
  col.defined.assign(n, 0);
  return col;
}

// First index whose value is defined, or size() when none is. All warm-up
// masks produced here are a prefix, so a single index describes them.
std::size_t first_defined(const ValueSeries& s) {
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (s.defined[t]) return t;
  }
  return s.size();
}

// SMA over a series whose leading prefix is undefined.
ValueSeries masked_sma(const ValueSeries& in, int n) {
  require_window(n);
  ValueSeries out;
  out.values.assign(in.size(), 0.0);
  out.defined.assign(in.size(), 0);
  const std::size_t f = first_defined(in);
  if (in.size() < f + static_cast<std::size_t>(n)) return out;
  double sum = 0.0;
  for (std::size_t t = f; t < in.size(); ++t) {
    sum += in.values[t];
    if (t >= f + static_cast<std::size_t>(n)) sum -= in.values[t - n];
    if (t + 1 >= f + static_cast<std::size_t>(n)) {
      out.values[t] = sum / n;
      out.defined[t] = 1;
    }
  }
  return out;
}

bool crossed_up(double prev_a, double prev_b, double a, double b) {
  return prev_a < prev_b && a > b;
}

bool crossed_down(double prev_a, double prev_b, double a, double b) {
  return prev_a > prev_b && a < b;
}

}  // namespace

std::string_view indicator_short_name(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::sma_cross: return "SMA";
    case IndicatorKind::macd: return "MACD";
    case IndicatorKind::momentum: return "MO";
    case IndicatorKind::price_osc: return "PO";
    case IndicatorKind::stochastic: return "sto";
    case IndicatorKind::rsi: return "RSI";
    case IndicatorKind::cci: return "CCI";
    case IndicatorKind::williams: return "LW";
    case IndicatorKind::bollinger: return "BB";
  }
  return "?";
}

ValueSeries sma(std::span<const double> values, int n) {
  require_window(n);
  ValueSeries out;
  out.values.assign(values.size(), 0.0);
  out.defined.assign(values.size(), 0);
  double sum = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    sum += values[t];
    if (t >= static_cast<std::size_t>(n)) sum -= values[t - n];
    if (t + 1 >= static_cast<std::size_t>(n)) {
      out.values[t] = sum / n;
      out.defined[t] = 1;
    }
  }
  return out;
}

std::vector<double> ema(std::span<const double> values, int n) {
  require_window(n);
  std::vector<double> out(values.size());
  if (values.empty()) return out;
  const double alpha = 2.0 / (n + 1);
  out[0] = values[0];
  for (std::size_t t = 1; t < values.size(); ++t) {
    out[t] = alpha * values[t] + (1.0 - alpha) * out[t - 1];
  }
  return out;
}

ValueSeries rolling_max(std::span<const double> values, int n) {
  require_window(n);
  ValueSeries out;
  out.values.assign(values.size(), 0.0);
  out.defined.assign(values.size(), 0);
  for (std::size_t t = static_cast<std::size_t>(n) - 1; t < values.size(); ++t) {
    double best = values[t];
    for (std::size_t i = t + 1 - n; i < t; ++i) best = std::max(best, values[i]);
    out.values[t] = best;
    out.defined[t] = 1;
  }
  return out;
}

ValueSeries rolling_min(std::span<const double> values, int n) {
  require_window(n);
  ValueSeries out;
  out.values.assign(values.size(), 0.0);
  out.defined.assign(values.size(), 0);
  for (std::size_t t = static_cast<std::size_t>(n) - 1; t < values.size(); ++t) {
    double best = values[t];
    for (std::size_t i = t + 1 - n; i < t; ++i) best = std::min(best, values[i]);
    out.values[t] = best;
    out.defined[t] = 1;
  }
  return out;
}

ValueSeries rolling_stddev(std::span<const double> values, int n) {
  require_window(n);
  ValueSeries out;
  out.values.assign(values.size(), 0.0);
  out.defined.assign(values.size(), 0);
  for (std::size_t t = static_cast<std::size_t>(n) - 1; t < values.size(); ++t) {
    double mean = 0.0;
    for (std::size_t i = t + 1 - n; i <= t; ++i) mean += values[i];
    mean /= n;
    double var = 0.0;
    for (std::size_t i = t + 1 - n; i <= t; ++i) {
      const double d = values[i] - mean;
      var += d * d;
    }
    out.values[t] = std::sqrt(var / n);
    out.defined[t] = 1;
  }
  return out;
}

SignalColumn sma_cross_signals(const OhlcSeries& series, const IndicatorParams& params) {
  const auto closes = closes_of(series);
  const auto fast = sma(closes, params.sma_fast);
  const auto slow = sma(closes, params.sma_slow);
  SignalColumn col = make_column(series.size());
  for (std::size_t t = 1; t < series.size(); ++t) {
    if (!fast.defined[t - 1] || !slow.defined[t - 1] || !fast.defined[t] || !slow.defined[t])
      continue;
    col.defined[t] = 1;
    col.buy[t] = crossed_up(fast.values[t - 1], slow.values[t - 1], fast.values[t], slow.values[t]);
    col.sell[t] =
        crossed_down(fast.values[t - 1], slow.values[t - 1], fast.values[t], slow.values[t]);
  }
  return col;
}

SignalColumn macd_signals(const OhlcSeries& series, const IndicatorParams& params) {
  const auto closes = closes_of(series);
  const auto fast = ema(closes, params.macd_fast);
  const auto slow = ema(closes, params.macd_slow);
  std::vector<double> macd_line(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) macd_line[t] = fast[t] - slow[t];
  const auto signal_line = ema(macd_line, params.macd_signal);
  SignalColumn col = make_column(series.size());
  for (std::size_t t = 1; t < series.size(); ++t) {
    col.defined[t] = 1;
    col.buy[t] = crossed_up(macd_line[t - 1], signal_line[t - 1], macd_line[t], signal_line[t]);
    col.sell[t] =
        crossed_down(macd_line[t - 1], signal_line[t - 1], macd_line[t], signal_line[t]);
  }
  return col;
}

SignalColumn momentum_signals(const OhlcSeries& series, const IndicatorParams& params) {
  const auto closes = closes_of(series);
  const std::size_t lag = static_cast<std::size_t>(params.momentum_lag);
  SignalColumn col = make_column(series.size());
  for (std::size_t t = lag + 1; t < series.size(); ++t) {
    const double prev = closes[t - 1] - closes[t - 1 - lag];
    const double cur = closes[t] - closes[t - lag];
    col.defined[t] = 1;
    col.buy[t] = prev < 0.0 && cur > 0.0;
    col.sell[t] = prev > 0.0 && cur < 0.0;
  }
  return col;
}

SignalColumn price_osc_signals(const OhlcSeries& series, const IndicatorParams& params) {
  const auto closes = closes_of(series);
  const auto fast = ema(closes, params.price_osc_fast);
  const auto slow = ema(closes, params.price_osc_slow);
  std::vector<double> osc(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    osc[t] = (fast[t] - slow[t]) / slow[t];
  }
  SignalColumn col = make_column(series.size());
  for (std::size_t t = 1; t < series.size(); ++t) {
    col.defined[t] = 1;
    col.buy[t] = osc[t - 1] < 0.0 && osc[t] > 0.0;
    col.sell[t] = osc[t - 1] > 0.0 && osc[t] < 0.0;
  }
  return col;
}

SignalColumn stochastic_signals(const OhlcSeries& series, const IndicatorParams& params) {
  const auto closes = closes_of(series);
  const auto hh = rolling_max(highs_of(series), params.stochastic_window);
  const auto ll = rolling_min(lows_of(series), params.stochastic_window);

  ValueSeries k;
  k.values.assign(series.size(), 0.0);
  k.defined.assign(series.size(), 0);
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (!hh.defined[t] || !ll.defined[t]) continue;
    const double range = hh.values[t] - ll.values[t];
    // A flat window has no oscillation to measure; pin %K to the midpoint.
    k.values[t] = range == 0.0 ? 50.0 : 100.0 * (closes[t] - ll.values[t]) / range;
    k.defined[t] = 1;
  }
  const auto d = masked_sma(k, params.stochastic_smooth);
  const auto d_slow = masked_sma(d, params.stochastic_smooth);

  SignalColumn col = make_column(series.size());
  const double lo = params.stochastic_low;
  const double hi = params.stochastic_high;
  for (std::size_t t = 1; t < series.size(); ++t) {
    if (!d.defined[t - 1] || !d.defined[t] || !d_slow.defined[t - 1] || !d_slow.defined[t])
      continue;
    col.defined[t] = 1;
    col.buy[t] = d.values[t] < lo && d_slow.values[t] < lo &&
                 crossed_up(d.values[t - 1], d_slow.values[t - 1], d.values[t], d_slow.values[t]);
    col.sell[t] =
        d.values[t] > hi && d_slow.values[t] > hi &&
        crossed_down(d.values[t - 1], d_slow.values[t - 1], d.values[t], d_slow.values[t]);
  }
  return col;
}

SignalColumn rsi_signals(const OhlcSeries& series, const IndicatorParams& params) {
  const auto closes = closes_of(series);

  ValueSeries gains, losses;
  gains.values.assign(series.size(), 0.0);
  gains.defined.assign(series.size(), 0);
  losses = gains;
  for (std::size_t t = 1; t < series.size(); ++t) {
    const double change = closes[t] - closes[t - 1];
    gains.values[t] = std::max(change, 0.0);
    losses.values[t] = std::max(-change, 0.0);
    gains.defined[t] = 1;
    losses.defined[t] = 1;
  }
  const auto avg_gain = masked_sma(gains, params.rsi_window);
  const auto avg_loss = masked_sma(losses, params.rsi_window);

  ValueSeries rsi;
  rsi.values.assign(series.size(), 0.0);
  rsi.defined.assign(series.size(), 0);
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (!avg_gain.defined[t] || !avg_loss.defined[t]) continue;
    rsi.defined[t] = 1;
    if (avg_loss.values[t] == 0.0) {
      rsi.values[t] = 100.0;
    } else if (avg_gain.values[t] == 0.0) {
      rsi.values[t] = 0.0;
    } else {
      const double rs = avg_gain.values[t] / avg_loss.values[t];
      rsi.values[t] = 100.0 - 100.0 / (1.0 + rs);
    }
  }

  SignalColumn col = make_column(series.size());
  for (std::size_t t = 1; t < series.size(); ++t) {
    if (!rsi.defined[t - 1] || !rsi.defined[t]) continue;
    col.defined[t] = 1;
    col.buy[t] = rsi.values[t - 1] < params.rsi_low && rsi.values[t] > params.rsi_low;
    col.sell[t] = rsi.values[t - 1] > params.rsi_high && rsi.values[t] < params.rsi_high;
  }
  return col;
}

SignalColumn cci_signals(const OhlcSeries& series, const IndicatorParams& params) {
  std::vector<double> tp(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    const auto& bar = series.bars[t];
    tp[t] = (bar.close + bar.high + bar.low) / 3.0;
  }
  const auto tp_sma = sma(tp, params.cci_window);

  ValueSeries dev;
  dev.values.assign(series.size(), 0.0);
  dev.defined.assign(series.size(), 0);
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (!tp_sma.defined[t]) continue;
    dev.values[t] = std::abs(tp_sma.values[t] - tp[t]);
    dev.defined[t] = 1;
  }
  const auto mean_dev = masked_sma(dev, params.cci_window);

  ValueSeries cci;
  cci.values.assign(series.size(), 0.0);
  cci.defined.assign(series.size(), 0);
  for (std::size_t t = 0; t < series.size(); ++t) {
    // Zero mean deviation leaves the ratio undefined; keep the day masked.
    if (!mean_dev.defined[t] || mean_dev.values[t] == 0.0) continue;
    cci.values[t] = (tp[t] - tp_sma.values[t]) / (params.cci_scale * mean_dev.values[t]);
    cci.defined[t] = 1;
  }

  SignalColumn col = make_column(series.size());
  const double level = params.cci_level;
  for (std::size_t t = 1; t < series.size(); ++t) {
    if (!cci.defined[t - 1] || !cci.defined[t]) continue;
    col.defined[t] = 1;
    col.buy[t] = cci.values[t - 1] < level && cci.values[t] > level;
    col.sell[t] = cci.values[t - 1] > -level && cci.values[t] < -level;
  }
  return col;
}

SignalColumn williams_signals(const OhlcSeries& series, const IndicatorParams& params) {
  const auto closes = closes_of(series);
  const auto hh = rolling_max(highs_of(series), params.williams_window);
  const auto ll = rolling_min(lows_of(series), params.williams_window);

  ValueSeries lw;
  lw.values.assign(series.size(), 0.0);
  lw.defined.assign(series.size(), 0);
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (!hh.defined[t] || !ll.defined[t]) continue;
    const double range = hh.values[t] - ll.values[t];
    lw.values[t] = range == 0.0 ? -50.0 : 100.0 * (closes[t] - hh.values[t]) / range;
    lw.defined[t] = 1;
  }

  SignalColumn col = make_column(series.size());
  for (std::size_t t = 1; t < series.size(); ++t) {
    if (!lw.defined[t - 1] || !lw.defined[t]) continue;
    col.defined[t] = 1;
    col.buy[t] = lw.values[t - 1] < params.williams_low && lw.values[t] > params.williams_low;
    col.sell[t] = lw.values[t - 1] > params.williams_high && lw.values[t] < params.williams_high;
  }
  return col;
}

SignalColumn bollinger_signals(const OhlcSeries& series, const IndicatorParams& params) {
  const auto closes = closes_of(series);
  const auto mid = sma(closes, params.bollinger_window);
  const auto sd = rolling_stddev(closes, params.bollinger_window);

  SignalColumn col = make_column(series.size());
  for (std::size_t t = 1; t < series.size(); ++t) {
    if (!mid.defined[t - 1] || !mid.defined[t]) continue;
    const double upper_prev = mid.values[t - 1] + params.bollinger_width * sd.values[t - 1];
    const double lower_prev = mid.values[t - 1] - params.bollinger_width * sd.values[t - 1];
    const double upper = mid.values[t] + params.bollinger_width * sd.values[t];
    const double lower = mid.values[t] - params.bollinger_width * sd.values[t];
    col.defined[t] = 1;
    col.buy[t] = closes[t - 1] < lower_prev && closes[t] > lower;
    col.sell[t] = closes[t - 1] > upper_prev && closes[t] < upper;
  }
  return col;
}

SignalColumn indicator_signals(IndicatorKind kind, const OhlcSeries& series,
                               const IndicatorParams& params) {
  switch (kind) {
    case IndicatorKind::sma_cross: return sma_cross_signals(series, params);
    case IndicatorKind::macd: return macd_signals(series, params);
    case IndicatorKind::momentum: return momentum_signals(series, params);
    case IndicatorKind::price_osc: return price_osc_signals(series, params);
    case IndicatorKind::stochastic: return stochastic_signals(series, params);
    case IndicatorKind::rsi: return rsi_signals(series, params);
    case IndicatorKind::cci: return cci_signals(series, params);
    case IndicatorKind::williams: return williams_signals(series, params);
    case IndicatorKind::bollinger: return bollinger_signals(series, params);
  }
  throw std::invalid_argument("unknown indicator kind");
}

SignalMatrix::SignalMatrix(std::size_t days, std::array<SignalColumn, kIndicatorCount> columns)
    : days_(days), columns_(std::move(columns)) {}

std::size_t min_series_length(const IndicatorParams& params) {
  // First day each indicator can emit a signal: the day its slowest input is
  // defined at both t - 1 and t.
  const std::size_t firsts[] = {
      static_cast<std::size_t>(params.sma_slow),
      1,
      static_cast<std::size_t>(params.momentum_lag) + 1,
      1,
      static_cast<std::size_t>(params.stochastic_window - 1 +
                               2 * (params.stochastic_smooth - 1) + 1),
      static_cast<std::size_t>(params.rsi_window) + 1,
      static_cast<std::size_t>(2 * params.cci_window - 1),
      static_cast<std::size_t>(params.williams_window),
      static_cast<std::size_t>(params.bollinger_window),
  };
  return *std::max_element(std::begin(firsts), std::end(firsts)) + 2;
}

SignalMatrix build_signal_matrix(const OhlcSeries& series, const IndicatorParams& params) {
  const std::size_t need = min_series_length(params);
  if (series.size() < need) {
    throw SeriesTooShortError(series.size(), need);
  }
  std::array<SignalColumn, kIndicatorCount> columns;
  for (std::size_t k = 0; k < kIndicatorCount; ++k) {
    columns[k] = indicator_signals(static_cast<IndicatorKind>(k), series, params);
  }
  return SignalMatrix(series.size(), std::move(columns));
}

std::string signal_matrix_to_csv(const SignalMatrix& matrix, const OhlcSeries& series) {
  std::string out = "Date";
  for (std::size_t k = 0; k < kIndicatorCount; ++k) {
    const auto name = indicator_short_name(static_cast<IndicatorKind>(k));
    out += ',';
    out += name;
    out += "_buy,";
    out += name;
    out += "_sell";
  }
  out += '\n';
  for (std::size_t t = 0; t < matrix.days(); ++t) {
    out += to_string(series.bars[t].date);
    for (std::size_t k = 0; k < kIndicatorCount; ++k) {
      const auto kind = static_cast<IndicatorKind>(k);
      out += matrix.buy(t, kind) ? ",1" : ",0";
      out += matrix.sell(t, kind) ? ",1" : ",0";
    }
    out += '\n';
  }
  return out;
}

}  // namespace rulefront
