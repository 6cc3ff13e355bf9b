#pragma once

#include <string>
#include <vector>

#include "rulefront/backtest.hpp"
#include "rulefront/rolling.hpp"

namespace rulefront {

// {"sharpe": ..., "mdd": ..., "ann_return": ..., "ann_vol": ..., "turnover": ...}
std::string fitness_report_to_json(const FitnessReport& report, int indent = 2);

// JSON array with one object per window: train span, test span, and the
// strategy records with in/out-of-sample reports. Field order is fixed so a
// given run serializes to identical bytes every time.
std::string reports_to_json(const std::vector<WindowReport>& reports, int indent = 2);

// Flat CSV, one row per (window, strategy).
std::string reports_to_csv(const std::vector<WindowReport>& reports);

// One line per strategy in the bracketed "[sharpe, mdd]" style, e.g.
//   train 2003-2004 test 2005: [4.879, -0.042] [5.323, -0.127]
std::string front_summary_line(const WindowReport& report);

}  // namespace rulefront
