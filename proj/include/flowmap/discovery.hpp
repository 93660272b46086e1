#pragma once

#include "flowmap/event_log.hpp"
#include "flowmap/process_model.hpp"
#include "flowmap/significance.hpp"

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace flowmap {

/// Vertex of the log's element graph: kStartNode, kEndNode, or 2 + activity.
/// Ordering vertices orders start first, then end, then labels.
inline constexpr NodeId vertex_of(ActivityId a) { return a + 2; }
inline constexpr ActivityId activity_of(NodeId v) { return v - 2; }

/// Output of rate filtering, in log vertex space.
struct FilteredGraph {
  std::vector<ActivityId> nodes;  // ascending
  std::vector<Edge> edges;        // ascending (from, to)
};

/// Keeps activities whose case frequency passes the activity rate and
/// transitions (including start/end positions) whose case frequency passes
/// the transition rate and whose endpoints were kept. Both directions of a
/// two-way relation are kept when they pass.
FilteredGraph filter_elements(const SignificanceTable& table, const RateParams& params);

/// Supplies a table of the log projected onto the retained nodes. Consulted
/// only when no direct log transition can connect a node.
using FallbackTable = std::function<const SignificanceTable&()>;

/// Adds edges until every node is reachable from start and reaches end.
///
/// Forward pass: while a node is unreachable, add the log transition (u, v)
/// with u reachable and v unreachable of highest case frequency, ties broken
/// by ascending (u, v) vertex order. Backward pass: symmetric towards end.
/// Start and end positions count as transitions from start / to end. Added
/// edges carry their true significance and the repair flag. Throws
/// RepairError naming the node when no candidate exists.
std::vector<Edge> repair_reachability(std::span<const ActivityId> nodes, std::vector<Edge> edges,
                                      const SignificanceTable& table, const FallbackTable& fallback = {});

struct DiscoveryOptions {
  /// Kept regardless of the activity rate, provided they occur at all.
  std::vector<ActivityId> forced_nodes;
  /// Labels rendered as meta-state nodes, with their cycle bodies.
  std::map<ActivityId, std::vector<std::string>> meta_states;
  /// Recomputes the table over traces projected onto a keep mask. Enables the
  /// projected fallback of repair_reachability.
  std::function<SignificanceTable(const std::vector<bool>& keep)> projection;
};

/// Filter, then repair. Node and edge frequencies are absolute counts.
ProcessModel discover(const SignificanceTable& table, const RateParams& params, const DiscoveryOptions& options = {});
ProcessModel discover(const EventLog& log, const SignificanceTable& table, const RateParams& params);
ProcessModel discover(const EventLog& log, const RateParams& params);

/// Non-sentinel nodes that are unreachable from start or cannot reach end.
std::vector<NodeId> unreachable_nodes(const ProcessModel& model);

}  // namespace flowmap
