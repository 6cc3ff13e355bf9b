#include "rulefront/backtest.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rulefront/errors.hpp"

namespace rulefront {

double ReturnLedger::total_turnover() const {
  return std::accumulate(turnover.begin(), turnover.end(), 0.0);
}

PositionSeries positions_from_signals(const std::vector<FinalSignal>& signals,
                                      HoldPolicy policy) {
  PositionSeries w(signals.size(), 0);
  for (std::size_t t = 1; t < signals.size(); ++t) {
    const int signalled = position_of(signals[t - 1]);
    if (signalled == 0 && policy == HoldPolicy::hold_previous) {
      w[t] = w[t - 1];
    } else {
      w[t] = signalled;
    }
  }
  return w;
}

std::vector<double> returns_from_closes(std::span<const double> closes) {
  std::vector<double> r(closes.size(), 0.0);
  for (std::size_t t = 1; t < closes.size(); ++t) {
    if (closes[t - 1] <= 0.0) {
      throw DegeneratePriceError("non-positive close at index " + std::to_string(t - 1));
    }
    r[t] = (closes[t] - closes[t - 1]) / closes[t - 1];
  }
  return r;
}

ReturnLedger make_ledger(std::span<const double> asset_returns, const PositionSeries& positions,
                         double cost_rate) {
  if (asset_returns.size() != positions.size()) {
    throw std::invalid_argument("returns and positions must be the same length");
  }
  const std::size_t n = asset_returns.size();
  ReturnLedger ledger;
  ledger.asset.assign(asset_returns.begin(), asset_returns.end());
  ledger.gross.assign(n, 0.0);
  ledger.turnover.assign(n, 0.0);
  ledger.net.assign(n, 0.0);
  if (n == 0) return ledger;

  for (std::size_t t = 0; t < n; ++t) {
    ledger.gross[t] = positions[t] * asset_returns[t];
  }
  ledger.turnover[0] = std::abs(static_cast<double>(positions[0]));
  for (std::size_t t = 1; t < n; ++t) {
    const double denom = 1.0 + ledger.gross[t - 1];
    const double drift = denom == 0.0 ? 1.0 : (1.0 + asset_returns[t - 1]) / denom;
    ledger.turnover[t] = std::abs(positions[t] - positions[t - 1] * drift);
  }
  for (std::size_t t = 0; t < n; ++t) {
    ledger.net[t] = ledger.gross[t] - ledger.turnover[t] * cost_rate;
  }
  return ledger;
}

ReturnLedger net_returns(const OhlcSeries& series, const PositionSeries& positions,
                         double cost_rate) {
  if (series.size() < 2) {
    throw SeriesTooShortError(series.size(), 2);
  }
  return make_ledger(returns_from_closes(closes_of(series)), positions, cost_rate);
}

namespace {

bool is_ruin(std::span<const double> returns) {
  for (const double r : returns) {
    if (1.0 + r <= 0.0) return true;
  }
  return false;
}

}  // namespace

double annualized_return(std::span<const double> returns) {
  if (returns.empty()) return 0.0;
  if (is_ruin(returns)) return -1.0;
  double growth = 1.0;
  for (const double r : returns) growth *= 1.0 + r;
  return std::pow(growth, kTradingDaysPerYear / static_cast<double>(returns.size())) - 1.0;
}

double annualized_vol(std::span<const double> returns) {
  if (returns.empty()) return 0.0;
  const double n = static_cast<double>(returns.size());
  double mean = 0.0;
  for (const double r : returns) mean += r;
  mean /= n;
  double var = 0.0;
  for (const double r : returns) {
    const double d = r - mean;
    var += d * d;
  }
  return kVolAnnualization * std::sqrt(var / n);
}

double sharpe_ratio(std::span<const double> returns) {
  const double vol = annualized_vol(returns);
  if (vol == 0.0) return 0.0;
  return annualized_return(returns) / vol;
}

double max_drawdown(std::span<const double> returns) {
  if (is_ruin(returns)) return -1.0;
  double wealth = 1.0;
  double peak = 1.0;
  double worst = 0.0;
  for (const double r : returns) {
    wealth *= 1.0 + r;
    if (wealth > peak) peak = wealth;
    const double drawdown = (wealth - peak) / peak;
    if (drawdown < worst) worst = drawdown;
  }
  return worst;
}

FitnessReport fitness_from_ledger(const ReturnLedger& ledger, VolBasis vol_basis) {
  FitnessReport report;
  report.annualized_return = annualized_return(ledger.net);
  report.annualized_vol =
      annualized_vol(vol_basis == VolBasis::net ? ledger.net : ledger.asset);
  report.sharpe =
      report.annualized_vol == 0.0 ? 0.0 : report.annualized_return / report.annualized_vol;
  report.max_drawdown = max_drawdown(ledger.net);
  report.total_turnover = ledger.total_turnover();
  return report;
}

FitnessReport evaluate_strategy(const Genome& genome, const OhlcSeries& series,
                                const SignalMatrix& signals, const BacktestOptions& options) {
  if (signals.days() != series.size()) {
    throw std::invalid_argument("signal matrix not aligned with series");
  }
  const auto final_signals = signal_series(genome, signals);
  const auto positions = positions_from_signals(final_signals, options.hold_policy);
  const auto ledger = net_returns(series, positions, options.cost_rate);
  return fitness_from_ledger(ledger, options.vol_basis);
}

}  // namespace rulefront
