#include "flowmap/process_model.hpp"

#include "flowmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace flowmap {

void RateParams::validate() const {
  auto ok = [](double r) { return std::isfinite(r) && r >= 0.0 && r <= 100.0; };
  if (!ok(activity_rate)) throw InvalidArgument("activity rate must lie in [0, 100]");
  if (!ok(transition_rate)) throw InvalidArgument("transition rate must lie in [0, 100]");
}

bool RateParams::passes(std::uint64_t cases, std::size_t traces, double rate) {
  return static_cast<double>(cases) * 100.0 >= (100.0 - rate) * static_cast<double>(traces);
}

ProcessModel::ProcessModel()
    : nodes_{Node{NodeKind::Start, "start", 1.0, 0, {}}, Node{NodeKind::End, "end", 1.0, 0, {}}} {}

ProcessModel::ProcessModel(std::vector<Node> nodes, std::vector<Edge> edges, RateParams params)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), params_(params) {
  if (nodes_.size() < 2 || nodes_[kStartNode].kind != NodeKind::Start || nodes_[kEndNode].kind != NodeKind::End)
    throw InvalidArgument("process model must begin with the start and end sentinels");
  for (std::size_t i = 2; i < nodes_.size(); ++i) {
    const auto kind = nodes_[i].kind;
    if (kind == NodeKind::Start || kind == NodeKind::End)
      throw InvalidArgument("process model has more than one start or end node");
    if (i > 2 && !(nodes_[i - 1].label < nodes_[i].label))
      throw InvalidArgument("node labels must be unique and sorted: '" + nodes_[i].label + "'");
  }
  for (const auto& e : edges_)
    if (e.from >= nodes_.size() || e.to >= nodes_.size()) throw InvalidArgument("edge endpoint out of range");
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i - 1].from == edges_[i].from && edges_[i - 1].to == edges_[i].to)
      throw InvalidArgument("duplicate edge " + nodes_[edges_[i].from].label + " -> " + nodes_[edges_[i].to].label);
}

std::size_t ProcessModel::num_meta_state_nodes() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.kind == NodeKind::MetaState; }));
}

std::optional<NodeId> ProcessModel::find(std::string_view label) const {
  const auto first = nodes_.begin() + 2;
  const auto it =
      std::lower_bound(first, nodes_.end(), label, [](const Node& n, std::string_view l) { return n.label < l; });
  if (it == nodes_.end() || it->label != label) return std::nullopt;
  return static_cast<NodeId>(it - nodes_.begin());
}

const Edge* ProcessModel::edge(NodeId from, NodeId to) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{from, to}, [](const Edge& e, auto key) {
    return std::pair{e.from, e.to} < key;
  });
  if (it == edges_.end() || it->from != from || it->to != to) return nullptr;
  return &*it;
}

bool ProcessModel::has_edge(NodeId from, NodeId to) const { return edge(from, to) != nullptr; }

ProcessModel ProcessModel::with_edge(const Edge& e) const {
  if (has_edge(e.from, e.to)) return *this;
  auto edges = edges_;
  edges.push_back(e);
  return ProcessModel(nodes_, std::move(edges), params_);
}

}  // namespace flowmap
