#pragma once

#include "flowmap/event_log.hpp"
#include "flowmap/process_model.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flowmap {

// Cycles ------------------------------------------------------------------------

/// A simple cycle observed in the log: a segment between two consecutive
/// occurrences of one activity in which no activity repeats. Rotations are
/// distinct cycles.
struct Cycle {
  std::vector<std::string> body;
  std::uint64_t occurrences = 0;
  std::uint64_t cases = 0;
  double significance = 0.0;

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// All simple cycles of the log, sorted by body.
std::vector<Cycle> cycles_search(const EventLog& log);

/// A significant cycle of length > 1, collapsible into a single node.
struct MetaState {
  Cycle cycle;
  std::string token;

  const std::vector<std::string>& body() const { return cycle.body; }
  friend bool operator==(const MetaState&, const MetaState&) = default;
};

inline constexpr double kDefaultMetaStateThreshold = 0.5;

/// Cycles with a body longer than one whose case share reaches `threshold`.
/// Significance is recomputed as cases / num_traces. Output is sorted by body.
std::vector<MetaState> find_states(std::span<const Cycle> cycles, std::size_t num_traces, double threshold);

/// "[" + body joined by U+00B7 + "]".
std::string token_label(std::span<const std::string> body);

/// Body in compact form: labels concatenated when each is a single character
/// (as in "CF"), joined by U+00B7 otherwise.
std::string compact_body(std::span<const std::string> body);

/// Meta-states, among `candidates`, whose activities and cycle edges
/// (including the closing one) are all present in the model.
std::vector<MetaState> states_in_model(const ProcessModel& model, std::span<const MetaState> candidates);

// Log rebuilding ----------------------------------------------------------------

struct CollapsedSpan {
  std::size_t begin = 0;   // position in the original trace
  std::size_t length = 1;  // original events covered
  /// Index into the state list, or -1 for an event passed through.
  int state = -1;
};

struct RebuiltLog {
  EventLog log;
  /// Per trace, one span per output event.
  std::vector<std::vector<CollapsedSpan>> spans;
};

/// Collapses meta-state occurrences. Scanning left to right, an occurrence of
/// body b1..bk is the body repeated j >= 1 times (j maximal) followed by the
/// closing b1; the whole span becomes the state's token. Candidates are tried
/// in priority order: longer body, higher significance, smaller body.
RebuiltLog rebuild_log_detailed(const EventLog& log, std::span<const MetaState> states);
EventLog rebuild_log(const EventLog& log, std::span<const MetaState> states);

// Aggregation -------------------------------------------------------------------

enum class AggregationMode { None, Outer, InnerAll, InnerFreq };

std::string_view aggregation_name(AggregationMode mode);
std::optional<AggregationMode> parse_aggregation(std::string_view name);

struct AggregatedModel {
  ProcessModel model;
  AggregationMode mode = AggregationMode::None;
  std::vector<MetaState> states;
  /// Activities inside some meta-state (V+), and the rest of the model's
  /// activities (V-).
  std::vector<std::string> state_activities;
  std::vector<std::string> other_activities;
  /// Directly-follows pairs of the rebuilt log.
  std::vector<std::pair<std::string, std::string>> rebuilt_edges;
};

/// Meta-states are the significant cycles of the plain model discovered at
/// `params`. Outer mode rediscovers on the rebuilt log; inner modes hide
/// stand-alone state activities and redirect their relations to every
/// containing state (InnerAll) or to the most significant one (InnerFreq),
/// recounting case frequencies over the redirected traces. Token nodes are
/// kept regardless of the activity rate.
AggregatedModel aggregate(const EventLog& log, const RateParams& params, AggregationMode mode,
                          double threshold = kDefaultMetaStateThreshold);

/// Same, with the meta-state candidates (significant cycles of the whole log)
/// and the plain model already at hand.
AggregatedModel aggregate(const EventLog& log, const ProcessModel& plain, std::span<const MetaState> candidates,
                          AggregationMode mode);

/// Edge endpoint by label; kind is Start, End or Activity.
struct Endpoint {
  NodeKind kind = NodeKind::Activity;
  std::string label;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};
using LabelEdge = std::pair<Endpoint, Endpoint>;

/// Edge set used to replay aggregated models: every edge touching a meta-state
/// is expanded to each constituent activity, and each state's internal cycle
/// edges (closing edge included) are added.
std::set<LabelEdge> expanded_edges(const ProcessModel& model);

// Combinations over the rate grid -------------------------------------------------

/// The rate grid {0, step, ..., 100}^2 in (r_a asc, r_t asc) order.
std::vector<RateParams> rate_grid(int step);

using StateSet = std::vector<std::vector<std::string>>;  // cycle bodies, sorted

struct Combination {
  StateSet states;
  double coverage = 0.0;  // fraction of grid cells
  std::size_t cells = 0;

  std::vector<std::string> tokens() const;
};

struct CombinationMap {
  std::vector<RateParams> grid;
  std::vector<std::size_t> combination_of;  // per grid cell
  /// Ordered by size, then bodies.
  std::vector<Combination> combinations;
};

/// Meta-state set of the model discovered at every grid point.
CombinationMap combination_map(const EventLog& log, std::span<const RateParams> grid,
                               double threshold = kDefaultMetaStateThreshold);

/// Groups per-cell state sets into combinations.
CombinationMap group_combinations(std::vector<RateParams> grid, std::vector<StateSet> cell_states);

struct CombinationEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  StateSet added;     // states of `to` not in `from`
  std::string label;  // "+" + compact bodies joined by "|"
};

struct CombinationGraph {
  std::vector<Combination> nodes;
  std::vector<CombinationEdge> edges;
  /// (in + out degree) / (nodes - 1); zero for a single node.
  std::vector<double> degree_centrality;
};

/// Edge Ci -> Cj iff Ci is a proper subset of Cj and some pair of grid cells
/// adjacent along one rate axis carries Ci and Cj.
CombinationGraph combination_graph(const CombinationMap& map);

}  // namespace flowmap
