#include "flowmap/discovery.hpp"

#include "flowmap/error.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

namespace flowmap {

namespace {

bool edge_less(const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); }

// Case count of the log relation u -> v in vertex space (0 if never observed).
std::uint64_t relation_cases(const SignificanceTable& t, NodeId u, NodeId v) {
  if (u == kEndNode || v == kStartNode) return 0;
  if (u == kStartNode) return v == kEndNode ? 0 : t.start_cases(activity_of(v));
  if (v == kEndNode) return t.end_cases(activity_of(u));
  return t.transition_cases(activity_of(u), activity_of(v));
}

std::uint64_t relation_occurrences(const SignificanceTable& t, NodeId u, NodeId v) {
  if (u == kStartNode) return t.start_cases(activity_of(v));
  if (v == kEndNode) return t.end_cases(activity_of(u));
  return t.transition_occurrences(activity_of(u), activity_of(v));
}

// Reachability over the current edge set in vertex space.
std::vector<bool> search(std::size_t num_vertices, const std::vector<Edge>& edges, NodeId root, bool forward) {
  std::vector<std::vector<NodeId>> adj(num_vertices);
  for (const auto& e : edges) {
    if (forward)
      adj[e.from].push_back(e.to);
    else
      adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(num_vertices, false);
  std::vector<NodeId> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return seen;
}

struct Candidate {
  NodeId from = 0;
  NodeId to = 0;
  std::uint64_t cases = 0;
};

// Best candidate among `sources` x `targets`: most cases, then smallest (u, v).
std::optional<Candidate> best_candidate(const SignificanceTable& t, const std::vector<NodeId>& sources,
                                        const std::vector<NodeId>& targets) {
  std::optional<Candidate> best;
  for (NodeId u : sources)
    for (NodeId v : targets) {
      const auto c = relation_cases(t, u, v);
      if (c == 0) continue;
      if (!best || c > best->cases || (c == best->cases && std::tie(u, v) < std::tie(best->from, best->to)))
        best = Candidate{u, v, c};
    }
  return best;
}

}  // namespace

FilteredGraph filter_elements(const SignificanceTable& table, const RateParams& params) {
  params.validate();
  FilteredGraph out;
  const std::size_t traces = table.num_traces();
  std::vector<bool> kept(table.num_labels(), false);
  for (ActivityId a = 0; a < table.num_labels(); ++a) {
    const auto c = table.activity_cases(a);
    if (c > 0 && RateParams::passes(c, traces, params.activity_rate)) {
      kept[a] = true;
      out.nodes.push_back(a);
    }
  }
  auto passes = [&](std::uint64_t c) { return c > 0 && RateParams::passes(c, traces, params.transition_rate); };
  for (ActivityId a : out.nodes)
    if (const auto c = table.start_cases(a); passes(c))
      out.edges.push_back({kStartNode, vertex_of(a), table.fraction(c), c, false});
  for (ActivityId a : out.nodes)
    if (const auto c = table.end_cases(a); passes(c))
      out.edges.push_back({vertex_of(a), kEndNode, table.fraction(c), c, false});
  for (const auto& tr : table.transitions())
    if (kept[tr.from] && kept[tr.to] && passes(tr.cases))
      out.edges.push_back({vertex_of(tr.from), vertex_of(tr.to), table.fraction(tr.cases), tr.occurrences, false});
  std::sort(out.edges.begin(), out.edges.end(), edge_less);
  return out;
}

std::vector<Edge> repair_reachability(std::span<const ActivityId> nodes, std::vector<Edge> edges,
                                      const SignificanceTable& table, const FallbackTable& fallback) {
  const std::size_t num_vertices = table.num_labels() + 2;
  std::vector<NodeId> retained;
  retained.reserve(nodes.size());
  for (ActivityId a : nodes) retained.push_back(vertex_of(a));

  auto add = [&](const SignificanceTable& source, const Candidate& c) {
    edges.push_back({c.from, c.to, source.fraction(c.cases), relation_occurrences(source, c.from, c.to), true});
  };

  for (const bool forward : {true, false}) {
    const NodeId root = forward ? kStartNode : kEndNode;
    for (;;) {
      const auto seen = search(num_vertices, edges, root, forward);
      std::vector<NodeId> inside{root};
      std::vector<NodeId> outside;
      for (NodeId v : retained) (seen[v] ? inside : outside).push_back(v);
      if (outside.empty()) break;
      std::sort(inside.begin(), inside.end());

      const auto& sources = forward ? inside : outside;
      const auto& targets = forward ? outside : inside;
      if (auto c = best_candidate(table, sources, targets)) {
        add(table, *c);
        continue;
      }
      if (fallback) {
        const SignificanceTable& projected = fallback();
        if (auto c = best_candidate(projected, sources, targets)) {
          add(projected, *c);
          continue;
        }
      }
      throw RepairError("cannot connect '" + table.label(activity_of(outside.front())) + "' " +
                        (forward ? "from start" : "to end"));
    }
  }
  std::sort(edges.begin(), edges.end(), edge_less);
  return edges;
}

ProcessModel discover(const SignificanceTable& table, const RateParams& params, const DiscoveryOptions& options) {
  FilteredGraph filtered = filter_elements(table, params);
  if (!options.forced_nodes.empty()) {
    for (ActivityId a : options.forced_nodes)
      if (table.activity_cases(a) > 0) filtered.nodes.push_back(a);
    std::sort(filtered.nodes.begin(), filtered.nodes.end());
    filtered.nodes.erase(std::unique(filtered.nodes.begin(), filtered.nodes.end()), filtered.nodes.end());
    // Forced nodes may admit further edges at the transition rate.
    std::vector<bool> kept(table.num_labels(), false);
    for (ActivityId a : filtered.nodes) kept[a] = true;
    RateParams all_nodes = params;
    all_nodes.activity_rate = 100.0;
    auto widened = filter_elements(table, all_nodes).edges;
    std::erase_if(widened, [&](const Edge& e) {
      return (e.from != kStartNode && !kept[activity_of(e.from)]) || (e.to != kEndNode && !kept[activity_of(e.to)]);
    });
    filtered.edges = std::move(widened);
  }

  std::optional<SignificanceTable> projected;
  FallbackTable fallback;
  if (options.projection) {
    fallback = [&]() -> const SignificanceTable& {
      if (!projected) {
        std::vector<bool> keep(table.num_labels(), false);
        for (ActivityId a : filtered.nodes) keep[a] = true;
        projected = options.projection(keep);
      }
      return *projected;
    };
  }
  const auto edges = repair_reachability(filtered.nodes, std::move(filtered.edges), table, fallback);

  // Compact log vertices into model node ids.
  std::vector<NodeId> model_id(table.num_labels() + 2, 0);
  model_id[kStartNode] = kStartNode;
  model_id[kEndNode] = kEndNode;
  const auto traces = static_cast<std::uint64_t>(table.num_traces());
  std::vector<Node> nodes{Node{NodeKind::Start, "start", 1.0, traces, {}}, Node{NodeKind::End, "end", 1.0, traces, {}}};
  for (ActivityId a : filtered.nodes) {
    model_id[vertex_of(a)] = static_cast<NodeId>(nodes.size());
    Node n{NodeKind::Activity, table.label(a), table.fraction(table.activity_cases(a)), table.activity_occurrences(a),
           {}};
    if (const auto it = options.meta_states.find(a); it != options.meta_states.end()) {
      n.kind = NodeKind::MetaState;
      n.members = it->second;
    }
    nodes.push_back(std::move(n));
  }
  std::vector<Edge> model_edges;
  model_edges.reserve(edges.size());
  for (Edge e : edges) {
    e.from = model_id[e.from];
    e.to = model_id[e.to];
    model_edges.push_back(e);
  }
  return ProcessModel(std::move(nodes), std::move(model_edges), params);
}

ProcessModel discover(const EventLog& log, const SignificanceTable& table, const RateParams& params) {
  DiscoveryOptions options;
  options.projection = [&log](const std::vector<bool>& keep) { return compute_significance(log, &keep); };
  return discover(table, params, options);
}

ProcessModel discover(const EventLog& log, const RateParams& params) {
  return discover(log, compute_significance(log), params);
}

std::vector<NodeId> unreachable_nodes(const ProcessModel& model) {
  const auto fwd = search(model.num_nodes(), model.edges(), kStartNode, true);
  const auto bwd = search(model.num_nodes(), model.edges(), kEndNode, false);
  std::vector<NodeId> out;
  for (NodeId v = 2; v < model.num_nodes(); ++v)
    if (!fwd[v] || !bwd[v]) out.push_back(v);
  return out;
}

}  // namespace flowmap
