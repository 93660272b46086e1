#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flowmap {

/// Activity and transition rates, both percentages in [0, 100]. An element
/// survives filtering iff its case frequency is at least (100 - rate) / 100.
struct RateParams {
  double activity_rate = 100.0;
  double transition_rate = 100.0;

  /// Throws InvalidArgument when a rate is outside [0, 100].
  void validate() const;

  double activity_threshold() const { return (100.0 - activity_rate) / 100.0; }
  double transition_threshold() const { return (100.0 - transition_rate) / 100.0; }

  /// Threshold test on counts: cases / traces >= (100 - rate) / 100,
  /// evaluated as cases * 100 >= (100 - rate) * traces so that integral rates
  /// compare exactly.
  static bool passes(std::uint64_t cases, std::size_t traces, double rate);

  friend bool operator==(const RateParams&, const RateParams&) = default;
  friend auto operator<=>(const RateParams&, const RateParams&) = default;
};

/// Node index inside a ProcessModel. Index 0 is the start sentinel, 1 the end
/// sentinel, and 2.. are the activity and meta-state nodes in label order.
using NodeId = std::uint32_t;
inline constexpr NodeId kStartNode = 0;
inline constexpr NodeId kEndNode = 1;

enum class NodeKind { Start, End, Activity, MetaState };

struct Node {
  NodeKind kind = NodeKind::Activity;
  std::string label;
  double significance = 1.0;
  std::uint64_t frequency = 0;
  /// Cycle body of a meta-state node; empty otherwise.
  std::vector<std::string> members;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId from = kStartNode;
  NodeId to = kEndNode;
  double significance = 1.0;
  std::uint64_t frequency = 0;
  /// Added by reachability repair rather than surviving the rate filter.
  bool repair = false;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A directly-follows process map with start/end sentinels.
///
/// The constructor only checks structure (sentinels first, unique sorted
/// labels, edges in range and not duplicated) and sorts edges by (from, to).
/// Reachability is a property of discovered models, checked separately.
class ProcessModel {
 public:
  ProcessModel();
  ProcessModel(std::vector<Node> nodes, std::vector<Edge> edges, RateParams params = {});

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  const RateParams& params() const { return params_; }

  /// All nodes including the two sentinels.
  std::size_t num_nodes() const { return nodes_.size(); }
  /// Activity and meta-state nodes (sentinels excluded).
  std::size_t num_inner_nodes() const { return nodes_.size() - 2; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_meta_state_nodes() const;

  /// Looks up a non-sentinel node by label.
  std::optional<NodeId> find(std::string_view label) const;
  bool has_edge(NodeId from, NodeId to) const;
  const Edge* edge(NodeId from, NodeId to) const;

  /// Copy with one more edge; an existing edge is left untouched.
  ProcessModel with_edge(const Edge& e) const;

  friend bool operator==(const ProcessModel&, const ProcessModel&) = default;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  RateParams params_;
};

}  // namespace flowmap
