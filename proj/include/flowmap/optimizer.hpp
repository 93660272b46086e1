#pragma once

#include "flowmap/event_log.hpp"
#include "flowmap/metastates.hpp"
#include "flowmap/process_model.hpp"
#include "flowmap/quality.hpp"
#include "flowmap/significance.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace flowmap {

struct ObjectiveConfig {
  /// Weight of simplicity against fitness, in [0, 1].
  double lambda = 0.6;
  Measure measure = Measure::AverageDegree;
  /// Grid spacing in percent; must divide 100.
  int step = 5;
  /// Applied to the optimal model after the search.
  AggregationMode mode = AggregationMode::None;
  double threshold = kDefaultMetaStateThreshold;
  /// Measure every cell on the model aggregated with `mode`. The complexity
  /// reference stays the plain unfiltered model.
  bool aggregate_landscape = false;
  double log_base = 2.0;
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 0;

  /// Throws InvalidArgument on an out-of-range field.
  void validate() const;
};

struct Cell {
  RateParams params;
  double fitness = 0.0;
  /// Complexity relative to the unfiltered model.
  double complexity = 0.0;
  double objective = 0.0;
  /// Complexity before scaling.
  double raw_complexity = 0.0;
  std::size_t nodes = 0;  // sentinels included
  std::size_t edges = 0;
  std::size_t meta_states = 0;
  /// The model has no activity node; fitness is undefined and set to 0, and
  /// the cell never wins the search.
  bool degenerate = false;
};

/// (1 - lambda) * fitness + lambda * (1 - complexity).
double objective(double lambda, double fitness, double complexity);

/// Shared, immutable state for evaluating many grid points of one log.
class Evaluator {
 public:
  Evaluator(const EventLog& log, ObjectiveConfig config);

  Cell evaluate(const RateParams& params) const;
  /// The model the cell at `params` is measured on.
  ProcessModel model_at(const RateParams& params) const;

  const EventLog& log() const { return log_; }
  const ObjectiveConfig& config() const { return config_; }
  const SignificanceTable& table() const { return table_; }
  const ComplexityScale& scale() const { return scale_; }
  const std::vector<MetaState>& candidates() const { return candidates_; }

 private:
  const EventLog& log_;
  ObjectiveConfig config_;
  SignificanceTable table_;
  ComplexityScale scale_;
  std::vector<MetaState> candidates_;
};

Cell evaluate_point(const EventLog& log, const RateParams& params, const ObjectiveConfig& config);

struct Landscape {
  ObjectiveConfig config;
  /// In (r_a asc, r_t asc) order.
  std::vector<Cell> cells;
  std::size_t best = 0;

  const Cell& optimum() const { return cells[best]; }
};

/// Index of the best non-degenerate cell: highest objective, then lower
/// transition rate, then higher activity rate.
std::size_t best_cell(std::span<const Cell> cells);

Landscape grid_search(const EventLog& log, const ObjectiveConfig& config);

struct OptimizationResult {
  Landscape landscape;
  AggregatedModel model;
};

/// Grid search, then aggregation of the model at the optimum.
OptimizationResult optimize_and_aggregate(const EventLog& log, const ObjectiveConfig& config);

}  // namespace flowmap
