#include "rulefront/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace rulefront {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json fitness_to_json(const FitnessReport& report) {
  ordered_json j;
  j["sharpe"] = report.sharpe;
  j["mdd"] = report.max_drawdown;
  j["ann_return"] = report.annualized_return;
  j["ann_vol"] = report.annualized_vol;
  j["turnover"] = report.total_turnover;
  return j;
}

ordered_json window_to_json(const WindowReport& report) {
  ordered_json j;
  j["train"] = {report.spec.train_start_year, report.spec.train_end_year};
  if (report.spec.test_end_year == report.spec.test_start_year) {
    j["test"] = report.spec.test_start_year;
  } else {
    j["test"] = {report.spec.test_start_year, report.spec.test_end_year};
  }
  ordered_json strategies = ordered_json::array();
  for (const auto& s : report.strategies) {
    ordered_json entry;
    entry["genome"] = s.genome;
    entry["buy_rule"] = s.buy_rule;
    entry["sell_rule"] = s.sell_rule;
    entry["in_sample"] = fitness_to_json(s.in_sample);
    entry["out_sample"] = fitness_to_json(s.out_sample);
    strategies.push_back(std::move(entry));
  }
  j["strategies"] = std::move(strategies);
  return j;
}

std::string format3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string fitness_report_to_json(const FitnessReport& report, int indent) {
  return fitness_to_json(report).dump(indent) + "\n";
}

std::string reports_to_json(const std::vector<WindowReport>& reports, int indent) {
  ordered_json arr = ordered_json::array();
  for (const auto& report : reports) {
    arr.push_back(window_to_json(report));
  }
  return arr.dump(indent) + "\n";
}

std::string reports_to_csv(const std::vector<WindowReport>& reports) {
  std::string out =
      "train_start,train_end,test_start,test_end,genome,"
      "in_sharpe,in_mdd,in_ann_return,in_ann_vol,in_turnover,"
      "out_sharpe,out_mdd,out_ann_return,out_ann_vol,out_turnover,"
      "buy_rule,sell_rule\n";
  char buf[256];
  for (const auto& report : reports) {
    for (const auto& s : report.strategies) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,", report.spec.train_start_year,
                    report.spec.train_end_year, report.spec.test_start_year,
                    report.spec.test_end_year);
      out += buf;
      out += s.genome;
      auto append_fitness = [&](const FitnessReport& f) {
        std::snprintf(buf, sizeof(buf), ",%.10g,%.10g,%.10g,%.10g,%.10g", f.sharpe,
                      f.max_drawdown, f.annualized_return, f.annualized_vol,
                      f.total_turnover);
        out += buf;
      };
      append_fitness(s.in_sample);
      append_fitness(s.out_sample);
      out += ',';
      out += s.buy_rule;
      out += ',';
      out += s.sell_rule;
      out += '\n';
    }
  }
  return out;
}

std::string front_summary_line(const WindowReport& report) {
  std::string out = to_string(report.spec) + ":";
  for (const auto& s : report.strategies) {
    out += " [" + format3(s.in_sample.sharpe) + ", " + format3(s.in_sample.max_drawdown) + "]";
  }
  return out;
}

}  // namespace rulefront
