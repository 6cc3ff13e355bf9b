#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rulefront/genome.hpp"
#include "rulefront/indicators.hpp"
#include "rulefront/market_data.hpp"

namespace rulefront {

inline constexpr double kTradingDaysPerYear = 252.0;
inline constexpr double kVolAnnualization = 16.0;

// Position held on each day, in {-1, 0, +1}. Day t trades on the signal of
// day t - 1; day 0 starts flat.
using PositionSeries = std::vector<int>;

enum class HoldPolicy {
  flat,           // neutral signal means no position
  hold_previous,  // neutral signal keeps yesterday's position
};

// Which return stream feeds the volatility (and therefore the Sharpe
// denominator): the cost-adjusted strategy returns or the raw asset returns.
enum class VolBasis { net, asset };

struct BacktestOptions {
  double cost_rate = 0.02;
  HoldPolicy hold_policy = HoldPolicy::flat;
  VolBasis vol_basis = VolBasis::net;
};

// Day-aligned return bookkeeping. Index 0 is the first bar of the window; it
// has no prior close, so r[0] = 0 and only the initial position entry can
// cost anything there.
struct ReturnLedger {
  std::vector<double> asset;     // simple day-over-day asset returns
  std::vector<double> gross;     // position * asset return
  std::vector<double> turnover;  // units traded, drift-adjusted
  std::vector<double> net;       // gross minus turnover * cost_rate

  double total_turnover() const;
};

struct FitnessReport {
  double sharpe = 0.0;
  double max_drawdown = 0.0;  // signed fraction in [-1, 0]
  double annualized_return = 0.0;
  double annualized_vol = 0.0;
  double total_turnover = 0.0;
};

PositionSeries positions_from_signals(const std::vector<FinalSignal>& signals,
                                      HoldPolicy policy = HoldPolicy::flat);

// r[0] = 0, r[t] = close[t] / close[t-1] - 1.
std::vector<double> returns_from_closes(std::span<const double> closes);

// Core ledger arithmetic on an arbitrary day-aligned return/position pair.
// Turnover on day t is |w[t] - w[t-1] * drift| where drift re-expresses
// yesterday's position in today's portfolio units,
// drift = (1 + r[t-1]) / (1 + gross[t-1]), taken as 1 when the denominator
// is zero. tau[0] = |w[0]|.
ReturnLedger make_ledger(std::span<const double> asset_returns, const PositionSeries& positions,
                         double cost_rate);

ReturnLedger net_returns(const OhlcSeries& series, const PositionSeries& positions,
                         double cost_rate);

// Geometric annualization at 252 trading days. A day that wipes the account
// (1 + r <= 0) floors the result at -1.
double annualized_return(std::span<const double> returns);

// Population standard deviation scaled by exactly 16.
double annualized_vol(std::span<const double> returns);

// annualized_return / annualized_vol, defined as 0 when the vol is 0.
double sharpe_ratio(std::span<const double> returns);

// Most negative peak-to-trough excursion of the wealth index, starting from
// wealth 1 before any return. Floors at -1 on ruin.
double max_drawdown(std::span<const double> returns);

FitnessReport fitness_from_ledger(const ReturnLedger& ledger, VolBasis vol_basis = VolBasis::net);

// Full pipeline: decode, signal series, positions, ledger, metrics.
// The matrix must be row-aligned with the series.
FitnessReport evaluate_strategy(const Genome& genome, const OhlcSeries& series,
                                const SignalMatrix& signals, const BacktestOptions& options = {});

}  // namespace rulefront
