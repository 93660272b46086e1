#include "flowmap/optimizer.hpp"

#include "flowmap/discovery.hpp"
#include "flowmap/error.hpp"

#include "parallel.hpp"

#include <cmath>

namespace flowmap {

void ObjectiveConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("lambda must lie in [0, 1]");
  if (step < 1 || step > 50 || 100 % step != 0) throw InvalidArgument("grid step must lie in 1..50 and divide 100");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidArgument("meta-state threshold must lie in (0, 1]");
  if (!(log_base > 0.0) || log_base == 1.0) throw InvalidArgument("logarithm base must be positive and not 1");
}

double objective(double lambda, double fitness, double complexity) {
  return (1.0 - lambda) * fitness + lambda * (1.0 - complexity);
}

Evaluator::Evaluator(const EventLog& log, ObjectiveConfig config)
    : log_(log),
      config_((config.validate(), config)),
      table_(compute_significance(log)),
      scale_(log),
      candidates_(find_states(cycles_search(log), log.num_traces(), config.threshold)) {}

ProcessModel Evaluator::model_at(const RateParams& params) const {
  ProcessModel plain = discover(log_, table_, params);
  if (!config_.aggregate_landscape || config_.mode == AggregationMode::None) return plain;
  return aggregate(log_, plain, candidates_, config_.mode).model;
}

Cell Evaluator::evaluate(const RateParams& params) const {
  Cell cell;
  cell.params = params;
  const ProcessModel plain = discover(log_, table_, params);
  const ProcessModel* measured = &plain;
  std::optional<AggregatedModel> aggregated;
  if (config_.aggregate_landscape && config_.mode != AggregationMode::None) {
    aggregated = aggregate(log_, plain, candidates_, config_.mode);
    measured = &aggregated->model;
    cell.meta_states = aggregated->states.size();
  } else {
    cell.meta_states = states_in_model(plain, candidates_).size();
  }

  cell.nodes = measured->num_nodes();
  cell.edges = measured->num_edges();
  cell.degenerate = measured->num_inner_nodes() == 0;
  cell.fitness = cell.degenerate ? 0.0 : fitness(*measured, log_);
  cell.raw_complexity = complexity(*measured, config_.measure, log_, config_.log_base);
  cell.complexity = scale_.scaled(*measured, config_.measure, config_.log_base);
  cell.objective = objective(config_.lambda, cell.fitness, cell.complexity);
  return cell;
}

Cell evaluate_point(const EventLog& log, const RateParams& params, const ObjectiveConfig& config) {
  params.validate();
  return Evaluator(log, config).evaluate(params);
}

std::size_t best_cell(std::span<const Cell> cells) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    if (c.degenerate) continue;
    if (!best) {
      best = i;
      continue;
    }
    const Cell& b = cells[*best];
    if (c.objective != b.objective) {
      if (c.objective > b.objective) best = i;
    } else if (c.params.transition_rate != b.params.transition_rate) {
      if (c.params.transition_rate < b.params.transition_rate) best = i;
    } else if (c.params.activity_rate > b.params.activity_rate) {
      best = i;
    }
  }
  if (!best) throw MetricError("every grid cell yields an empty model");
  return *best;
}

Landscape grid_search(const EventLog& log, const ObjectiveConfig& config) {
  if (log.empty()) throw EmptyLogError("cannot optimize on an empty log");
  const Evaluator evaluator(log, config);
  const auto grid = rate_grid(config.step);
  Landscape out;
  out.config = config;
  out.cells.resize(grid.size());
  detail::parallel_for(grid.size(), config.threads,
                       [&](std::size_t i) { out.cells[i] = evaluator.evaluate(grid[i]); });
  out.best = best_cell(out.cells);
  return out;
}

OptimizationResult optimize_and_aggregate(const EventLog& log, const ObjectiveConfig& config) {
  Landscape landscape = grid_search(log, config);
  const RateParams at = landscape.optimum().params;
  const ProcessModel plain = discover(log, at);
  const auto candidates = find_states(cycles_search(log), log.num_traces(), config.threshold);
  AggregatedModel model = aggregate(log, plain, candidates, config.mode);
  return {std::move(landscape), std::move(model)};
}

}  // namespace flowmap
