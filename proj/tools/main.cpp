#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rulefront/backtest.hpp"
#include "rulefront/errors.hpp"
#include "rulefront/genome.hpp"
#include "rulefront/indicators.hpp"
#include "rulefront/market_data.hpp"
#include "rulefront/report.hpp"
#include "rulefront/rolling.hpp"

namespace {

using namespace rulefront;

struct CommonArgs {
  std::string data_path;
  std::optional<int> start_year;
  std::optional<int> end_year;
};

void add_data_flags(CLI::App& cmd, CommonArgs& args) {
  cmd.add_option("--data", args.data_path, "Daily OHLC CSV file")->required();
  cmd.add_option("--start-year", args.start_year, "First year to use (default: first in data)");
  cmd.add_option("--end-year", args.end_year, "Last year to use (default: last in data)");
}

OhlcSeries load_series(const CommonArgs& args) {
  LoadStats stats;
  OhlcSeries series = load_ohlc(args.data_path, &stats);
  if (stats.dropped_rows > 0) {
    std::cerr << "warning: dropped " << stats.dropped_rows << " unparseable row(s) from "
              << args.data_path << "\n";
  }
  const int start = args.start_year.value_or(series.bars.front().date.year);
  const int end = args.end_year.value_or(series.bars.back().date.year);
  return slice_by_years(series, start, end);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) {
    throw Error("OutputFile", "cannot open for writing: " + path);
  }
  out << content;
}

int cmd_signals(const CommonArgs& args, const std::string& out_path) {
  const OhlcSeries series = load_series(args);
  const SignalMatrix matrix = build_signal_matrix(series);
  write_file(out_path, signal_matrix_to_csv(matrix, series));
  std::cout << "wrote " << matrix.days() << " rows to " << out_path << "\n";
  return 0;
}

int cmd_backtest(const CommonArgs& args, const std::string& genome_text, double cost) {
  const Genome genome = Genome::from_string(genome_text);
  const OhlcSeries series = load_series(args);
  const SignalMatrix matrix = build_signal_matrix(series);
  BacktestOptions options;
  options.cost_rate = cost;
  const FitnessReport report = evaluate_strategy(genome, series, matrix, options);
  const StrategyRules rules = decode(genome);
  std::cout << render_rule(rules.buy, "buy") << "\n"
            << render_rule(rules.sell, "sell") << "\n"
            << fitness_report_to_json(report);
  return 0;
}

int cmd_render(const std::string& genome_text) {
  const Genome genome = Genome::from_string(genome_text);
  const StrategyRules rules = decode(genome);
  std::cout << render_rule(rules.buy, "buy") << "\n"
            << render_rule(rules.sell, "sell") << "\n";
  return 0;
}

struct RollArgs {
  CommonArgs common;
  RunConfig config;
  std::string out_path = "report.json";
};

int cmd_roll(const RollArgs& args) {
  const OhlcSeries series = load_series(args.common);
  const int first_year = series.bars.front().date.year;
  const int last_year = series.bars.back().date.year;
  const auto windows =
      make_windows(first_year, last_year, args.config.train_years, args.config.test_years);

  const auto reports = run_all(series, windows, args.config);
  for (const auto& report : reports) {
    std::cout << front_summary_line(report) << "\n";
  }
  write_file(args.out_path, reports_to_json(reports));
  std::cout << "wrote " << reports.size() << " windows to " << args.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolves technical-indicator trading rules on daily OHLC data"};
  app.require_subcommand(1);

  CommonArgs signals_args;
  std::string signals_out = "signals.csv";
  CLI::App* signals = app.add_subcommand("signals", "Dump per-indicator buy/sell flags as CSV");
  add_data_flags(*signals, signals_args);
  signals->add_option("--out", signals_out, "Output CSV path");

  CommonArgs backtest_args;
  std::string backtest_genome;
  double backtest_cost = 0.02;
  CLI::App* backtest = app.add_subcommand("backtest", "Score one genome over a date range");
  add_data_flags(*backtest, backtest_args);
  backtest->add_option("--genome", backtest_genome, "52-bit genome as a 0/1 string")->required();
  backtest->add_option("--cost", backtest_cost, "One-way transaction cost rate");

  RollArgs roll_args;
  CLI::App* roll = app.add_subcommand("roll", "Rolling-window evolution over the data");
  add_data_flags(*roll, roll_args.common);
  roll->add_option("--cost", roll_args.config.backtest.cost_rate, "One-way transaction cost rate");
  roll->add_option("--pop", roll_args.config.evolve.population_size, "Population size");
  roll->add_option("--gens,--generations", roll_args.config.evolve.generations,
                   "Replacement cycles per window");
  roll->add_option("--cx", roll_args.config.evolve.crossover_rate, "Crossover rate");
  roll->add_option("--mut", roll_args.config.evolve.mutation_rate, "Mutation rate");
  roll->add_option("--seed", roll_args.config.evolve.seed, "Master seed; window i adds i");
  roll->add_option("--threads", roll_args.config.evolve.threads, "Fitness evaluation workers");
  roll->add_option("--train-years", roll_args.config.train_years, "Training span in years");
  roll->add_option("--test-years", roll_args.config.test_years, "Test span in years");
  roll->add_option("--out", roll_args.out_path, "Output JSON path");

  std::string render_genome;
  CLI::App* render = app.add_subcommand("render", "Print a genome's rules as text");
  render->add_option("--genome", render_genome, "52-bit genome as a 0/1 string")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (signals->parsed()) return cmd_signals(signals_args, signals_out);
    if (backtest->parsed()) return cmd_backtest(backtest_args, backtest_genome, backtest_cost);
    if (roll->parsed()) return cmd_roll(roll_args);
    if (render->parsed()) return cmd_render(render_genome);
  } catch (const std::exception& e) {
    std::cerr << "rulefront: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
