// flowmap: discover, optimize and inspect process maps from event logs.

#include "flowmap/discovery.hpp"
#include "flowmap/error.hpp"
#include "flowmap/event_log.hpp"
#include "flowmap/metastates.hpp"
#include "flowmap/optimizer.hpp"
#include "flowmap/render.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using namespace flowmap;

struct LogArgs {
  std::string path;
  ParseOptions parse;
  std::string delimiter = ",";
};

void add_log_args(CLI::App* cmd, LogArgs& args) {
  cmd->add_option("log", args.path, "Event log (CSV with a header row)")->required();
  cmd->add_option("--case-column", args.parse.case_column, "Case id column")->capture_default_str();
  cmd->add_option("--activity-column", args.parse.activity_column, "Activity column")->capture_default_str();
  cmd->add_option("--timestamp-column", args.parse.timestamp_column, "Timestamp column, used when present")
      ->capture_default_str();
  cmd->add_option("--delimiter", args.delimiter, "Field delimiter (one character)")->capture_default_str();
}

EventLog load(LogArgs& args) {
  if (args.delimiter.size() != 1) throw InvalidArgument("delimiter must be a single character");
  args.parse.delimiter = args.delimiter.front();
  return parse_log_file(args.path, args.parse);
}

// Writes to `path`, or to stdout when it is empty or "-".
void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  write(out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

Measure measure_arg(const std::string& name) {
  if (auto m = parse_measure(name)) return *m;
  throw InvalidArgument("unknown measure '" + name + "' (expected AD, H, Kn or R)");
}

AggregationMode mode_arg(const std::string& name) {
  if (auto m = parse_aggregation(name)) return *m;
  throw InvalidArgument("unknown aggregation mode '" + name + "' (expected none, outer, inner_all or inner_freq)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Process map discovery with fitness/complexity rate optimization"};
  app.require_subcommand(1);

  LogArgs log_args;

  auto* discover_cmd = app.add_subcommand("discover", "Discover a process map at fixed rates");
  add_log_args(discover_cmd, log_args);
  RateParams rates;
  std::string dot_path, json_path;
  std::string mode_name = "none";
  double threshold = kDefaultMetaStateThreshold;
  discover_cmd->add_option("--ra", rates.activity_rate, "Activity rate in [0, 100]")->capture_default_str();
  discover_cmd->add_option("--rt", rates.transition_rate, "Transition rate in [0, 100]")->capture_default_str();
  discover_cmd->add_option("--dot", dot_path, "DOT output path (stdout when omitted)");
  discover_cmd->add_option("--json", json_path, "JSON output path");
  discover_cmd->add_option("--mode", mode_name, "Meta-state aggregation: none, outer, inner_all, inner_freq")
      ->capture_default_str();
  discover_cmd->add_option("--threshold", threshold, "Meta-state significance threshold")->capture_default_str();

  auto* optimize_cmd = app.add_subcommand("optimize", "Grid-search the rates maximizing the objective");
  add_log_args(optimize_cmd, log_args);
  ObjectiveConfig config;
  std::string measure_name_arg = "AD";
  std::string csv_path, summary_path;
  optimize_cmd->add_option("--lambda", config.lambda, "Complexity weight in [0, 1]")->capture_default_str();
  optimize_cmd->add_option("--measure", measure_name_arg, "Complexity measure: AD, H, Kn, R")->capture_default_str();
  optimize_cmd->add_option("--step", config.step, "Grid step in percent")->capture_default_str();
  optimize_cmd->add_option("--mode", mode_name, "Aggregation of the optimal model")->capture_default_str();
  optimize_cmd->add_option("--threshold", threshold, "Meta-state significance threshold")->capture_default_str();
  optimize_cmd->add_flag("--aggregate-landscape", config.aggregate_landscape,
                         "Measure every cell on the aggregated model");
  optimize_cmd->add_option("--threads", config.threads, "Worker threads (0: all cores)")->capture_default_str();
  optimize_cmd->add_option("--csv", csv_path, "Landscape CSV output path");
  optimize_cmd->add_option("--dot", dot_path, "Optimal model DOT output path");
  optimize_cmd->add_option("--json", json_path, "Optimal model JSON output path");
  optimize_cmd->add_option("--summary", summary_path, "Summary output path (stdout when omitted)");

  auto* cycles_cmd = app.add_subcommand("cycles", "List simple cycles and meta-states");
  add_log_args(cycles_cmd, log_args);
  std::string report_path;
  cycles_cmd->add_option("--threshold", threshold, "Meta-state significance threshold")->capture_default_str();
  cycles_cmd->add_option("--output", report_path, "Report CSV path (stdout when omitted)");

  auto* combos_cmd = app.add_subcommand("combos", "Map meta-state combinations over the rate grid");
  add_log_args(combos_cmd, log_args);
  int step = 5;
  combos_cmd->add_option("--step", step, "Grid step in percent")->capture_default_str();
  combos_cmd->add_option("--threshold", threshold, "Meta-state significance threshold")->capture_default_str();
  combos_cmd->add_option("--csv", csv_path, "Combination map CSV path (stdout when omitted)");
  combos_cmd->add_option("--dot", dot_path, "Combination graph DOT path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (discover_cmd->parsed()) {
      rates.validate();
      const AggregationMode mode = mode_arg(mode_name);
      const EventLog log = load(log_args);
      const ProcessModel model = aggregate(log, rates, mode, threshold).model;
      emit(dot_path, [&](std::ostream& o) { write_dot(model, o); });
      if (!json_path.empty()) emit(json_path, [&](std::ostream& o) { o << to_json(model); });
    } else if (optimize_cmd->parsed()) {
      config.measure = measure_arg(measure_name_arg);
      config.mode = mode_arg(mode_name);
      config.threshold = threshold;
      config.validate();
      const EventLog log = load(log_args);
      const OptimizationResult result = optimize_and_aggregate(log, config);
      if (!csv_path.empty()) emit(csv_path, [&](std::ostream& o) { write_landscape_csv(result.landscape, o); });
      if (!dot_path.empty()) emit(dot_path, [&](std::ostream& o) { write_dot(result.model.model, o); });
      if (!json_path.empty()) emit(json_path, [&](std::ostream& o) { o << to_json(result.model.model); });
      emit(summary_path, [&](std::ostream& o) { write_summary(result.landscape, o); });
    } else if (cycles_cmd->parsed()) {
      if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidArgument("meta-state threshold must lie in (0, 1]");
      const EventLog log = load(log_args);
      const auto cycles = cycles_search(log);
      emit(report_path, [&](std::ostream& o) { write_cycles_report(cycles, threshold, o); });
    } else if (combos_cmd->parsed()) {
      const auto grid = rate_grid(step);
      const EventLog log = load(log_args);
      const CombinationMap map = combination_map(log, grid, threshold);
      emit(csv_path, [&](std::ostream& o) { write_combinations_csv(map, o); });
      if (!dot_path.empty())
        emit(dot_path, [&](std::ostream& o) { write_combination_dot(combination_graph(map), o); });
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << log_args.path << ": " << e.what() << '\n';
    return 2;
  } catch (const EmptyLogError& e) {
    std::cerr << "error: " << log_args.path << ": " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
