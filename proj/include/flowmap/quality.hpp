#pragma once

#include "flowmap/event_log.hpp"
#include "flowmap/process_model.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flowmap {

// Replay fitness --------------------------------------------------------------

struct ReplayResult {
  /// Share of the trace's events represented by a model activity node.
  double coverage = 0.0;
  /// Some event is not represented.
  bool skipped = false;
  /// Adjacent represented events (plus start and end) with no model edge.
  std::size_t forced = 0;
  /// The trace projected onto model activities, as log activity ids.
  std::vector<ActivityId> represented;
  /// max(0, coverage - alpha*skipped - beta*forced/n).
  double score = 0.0;
};

/// Replays traces of one log on one model.
///
/// Penalty weights are alpha = 0.5/N and beta = 1/N with N the number of
/// unique activities of the log; n is the number of non-sentinel model nodes.
/// For models with meta-state nodes, edges are taken from expanded_edges()
/// and only plain activity nodes represent events.
class Replayer {
 public:
  Replayer(const ProcessModel& model, const EventLog& log);
  Replayer(const ProcessModel& model, const EventLog& log, std::size_t num_unique_activities);

  ReplayResult replay(const Trace& trace) const;
  double score(const Trace& trace) const;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  bool linked(std::size_t u, std::size_t v) const { return adjacency_[u * width_ + v] != 0; }

  std::vector<char> represented_;  // by log activity
  std::vector<char> adjacency_;    // log vertex space: start, end, 2 + activity
  std::size_t width_ = 0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double inner_nodes_ = 0.0;
};

/// Replays a single labelled trace. Throws MetricError on an empty trace or a
/// model with no nodes besides the sentinels.
ReplayResult replay_trace(const ProcessModel& model, std::span<const std::string> trace,
                          std::size_t num_unique_activities);

/// Mean trace score over the log, summed in trace order.
double fitness(const ProcessModel& model, const EventLog& log);

// Complexity ------------------------------------------------------------------

enum class Measure { AverageDegree, Entropy, Density, RelativeSize };

inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::AverageDegree, Measure::Entropy, Measure::Density,
                                                        Measure::RelativeSize};

/// "AD", "H", "Kn", "R".
std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

/// Element counts a complexity measure is computed from.
struct ElementCounts {
  std::size_t nodes = 0;        // including sentinels
  std::size_t edges = 0;        // including sentinel edges
  std::size_t self_loops = 0;
  std::size_t inner_nodes = 0;  // sentinels excluded
  std::size_t inner_edges = 0;  // edges touching a sentinel excluded
};

ElementCounts count_elements(const ProcessModel& model);

/// m / n.
double average_degree(const ElementCounts& c);
/// Entropy of a flattened adjacency matrix: a two-outcome variable with
/// P(1) = m / n^2.
double adjacency_entropy(const ElementCounts& c, double log_base = 2.0);
/// Edges without self-loops over n(n-1).
double density(const ElementCounts& c);
/// (m''/M + n''/N) / 2 over sentinel-free counts and the log's unique
/// transition (M) and activity (N) counts.
double relative_size(const ElementCounts& c, std::size_t unique_activities, std::size_t unique_transitions);

/// Raw complexity J of the model.
double complexity(const ProcessModel& model, Measure measure, const EventLog& log, double log_base = 2.0);

/// Complexity divided by that of the unfiltered (100/100) model of the same
/// log. The reference model is discovered once, on construction.
class ComplexityScale {
 public:
  explicit ComplexityScale(const EventLog& log);

  const ProcessModel& reference_model() const { return reference_; }
  double reference(Measure measure, double log_base = 2.0) const;
  double scaled(const ProcessModel& model, Measure measure, double log_base = 2.0) const;

 private:
  std::size_t unique_activities_;
  std::size_t unique_transitions_;
  ProcessModel reference_;
};

double scaled_complexity(const ProcessModel& model, Measure measure, const EventLog& log, double log_base = 2.0);

}  // namespace flowmap
