#include "flowmap/discovery.hpp"
#include "flowmap/error.hpp"
#include "flowmap/metastates.hpp"
#include "flowmap/significance.hpp"

#include <algorithm>
#include <map>

namespace flowmap {

std::string_view aggregation_name(AggregationMode mode) {
  switch (mode) {
    case AggregationMode::None: return "none";
    case AggregationMode::Outer: return "outer";
    case AggregationMode::InnerAll: return "inner_all";
    case AggregationMode::InnerFreq: return "inner_freq";
  }
  return "?";
}

std::optional<AggregationMode> parse_aggregation(std::string_view name) {
  for (auto m : {AggregationMode::None, AggregationMode::Outer, AggregationMode::InnerAll, AggregationMode::InnerFreq})
    if (aggregation_name(m) == name) return m;
  return std::nullopt;
}

namespace {

std::vector<std::pair<std::string, std::string>> log_edges(const EventLog& log) {
  std::set<std::pair<ActivityId, ActivityId>> seen;
  for (const auto& t : log.traces())
    for (std::size_t i = 0; i + 1 < t.events.size(); ++i) seen.emplace(t.events[i], t.events[i + 1]);
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(seen.size());
  for (auto [a, b] : seen) out.emplace_back(log.label(a), log.label(b));
  return out;
}

// Most significant state containing each activity; ties go to the smaller body.
const MetaState* most_significant(const std::vector<const MetaState*>& containing) {
  const MetaState* best = nullptr;
  for (const MetaState* s : containing)
    if (!best || s->cycle.significance > best->cycle.significance ||
        (s->cycle.significance == best->cycle.significance && s->body() < best->body()))
      best = s;
  return best;
}

ProcessModel discover_outer(const RebuiltLog& rebuilt, const std::vector<MetaState>& states,
                            const RateParams& params) {
  const EventLog& log = rebuilt.log;
  DiscoveryOptions options;
  for (const auto& s : states)
    if (const auto id = log.find(s.token)) {
      options.forced_nodes.push_back(*id);
      options.meta_states.emplace(*id, s.body());
    }
  options.projection = [&log](const std::vector<bool>& keep) { return compute_significance(log, &keep); };
  return discover(compute_significance(log), params, options);
}

ProcessModel discover_inner(const RebuiltLog& rebuilt, const std::vector<MetaState>& states,
                            const std::vector<std::string>& state_activities, AggregationMode mode,
                            const RateParams& params) {
  const EventLog& log = rebuilt.log;

  // Alphabet after hiding stand-alone state activities; tokens are always in
  // it since redirected events may introduce them.
  std::vector<std::string> alphabet;
  for (const auto& label : log.alphabet())
    if (!std::binary_search(state_activities.begin(), state_activities.end(), label)) alphabet.push_back(label);
  for (const auto& s : states) alphabet.push_back(s.token);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  auto id_of = [&](const std::string& label) {
    return static_cast<ActivityId>(std::lower_bound(alphabet.begin(), alphabet.end(), label) - alphabet.begin());
  };

  // Redirect targets per rebuilt-log activity.
  std::vector<std::vector<ActivityId>> targets(log.num_unique_activities());
  for (ActivityId a = 0; a < log.num_unique_activities(); ++a) {
    const std::string& label = log.label(a);
    if (!std::binary_search(state_activities.begin(), state_activities.end(), label)) {
      targets[a] = {id_of(label)};
      continue;
    }
    std::vector<const MetaState*> containing;
    for (const auto& s : states)
      if (std::find(s.body().begin(), s.body().end(), label) != s.body().end()) containing.push_back(&s);
    if (mode == AggregationMode::InnerFreq) {
      targets[a] = {id_of(most_significant(containing)->token)};
    } else {
      for (const MetaState* s : containing) targets[a].push_back(id_of(s->token));
      std::sort(targets[a].begin(), targets[a].end());
    }
  }

  std::vector<LabelSetTrace> traces;
  traces.reserve(log.num_traces());
  for (const auto& t : log.traces()) {
    LabelSetTrace st;
    for (ActivityId a : t.events) st.push(targets[a]);
    traces.push_back(std::move(st));
  }

  DiscoveryOptions options;
  for (const auto& s : states) {
    options.forced_nodes.push_back(id_of(s.token));
    options.meta_states.emplace(id_of(s.token), s.body());
  }
  options.projection = [&traces, &alphabet](const std::vector<bool>& keep) {
    return compute_significance(alphabet, traces, &keep);
  };
  return discover(compute_significance(alphabet, traces), params, options);
}

}  // namespace

AggregatedModel aggregate(const EventLog& log, const ProcessModel& plain, std::span<const MetaState> candidates,
                          AggregationMode mode) {
  AggregatedModel out{plain, mode, states_in_model(plain, candidates), {}, {}, {}};
  for (const auto& s : out.states)
    out.state_activities.insert(out.state_activities.end(), s.body().begin(), s.body().end());
  std::sort(out.state_activities.begin(), out.state_activities.end());
  out.state_activities.erase(std::unique(out.state_activities.begin(), out.state_activities.end()),
                             out.state_activities.end());
  for (NodeId v = 2; v < plain.num_nodes(); ++v) {
    const auto& label = plain.node(v).label;
    if (!std::binary_search(out.state_activities.begin(), out.state_activities.end(), label))
      out.other_activities.push_back(label);
  }

  if (mode == AggregationMode::None || out.states.empty()) {
    out.rebuilt_edges = log_edges(log);
    return out;
  }
  const RebuiltLog rebuilt = rebuild_log_detailed(log, out.states);
  out.rebuilt_edges = log_edges(rebuilt.log);
  if (mode == AggregationMode::Outer)
    out.model = discover_outer(rebuilt, out.states, plain.params());
  else
    out.model = discover_inner(rebuilt, out.states, out.state_activities, mode, plain.params());
  return out;
}

AggregatedModel aggregate(const EventLog& log, const RateParams& params, AggregationMode mode, double threshold) {
  const auto table = compute_significance(log);
  const ProcessModel plain = discover(log, table, params);
  const auto candidates = find_states(cycles_search(log), log.num_traces(), threshold);
  return aggregate(log, plain, candidates, mode);
}

std::set<LabelEdge> expanded_edges(const ProcessModel& model) {
  auto expand = [&](NodeId id) {
    const Node& n = model.node(id);
    std::vector<Endpoint> out;
    if (n.kind == NodeKind::MetaState) {
      for (const auto& m : n.members) out.push_back({NodeKind::Activity, m});
    } else {
      out.push_back({n.kind, n.label});
    }
    return out;
  };
  std::set<LabelEdge> edges;
  for (const auto& e : model.edges())
    for (const auto& u : expand(e.from))
      for (const auto& v : expand(e.to)) edges.emplace(u, v);
  for (const auto& n : model.nodes()) {
    if (n.kind != NodeKind::MetaState) continue;
    const auto& b = n.members;
    for (std::size_t i = 0; i < b.size(); ++i)
      edges.emplace(Endpoint{NodeKind::Activity, b[i]}, Endpoint{NodeKind::Activity, b[(i + 1) % b.size()]});
  }
  return edges;
}

}  // namespace flowmap
