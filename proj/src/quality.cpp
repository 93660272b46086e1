#include "flowmap/quality.hpp"

#include "flowmap/discovery.hpp"
#include "flowmap/error.hpp"
#include "flowmap/metastates.hpp"

#include <algorithm>
#include <cmath>

namespace flowmap {

Replayer::Replayer(const ProcessModel& model, const EventLog& log)
    : Replayer(model, log, log.num_unique_activities()) {}

Replayer::Replayer(const ProcessModel& model, const EventLog& log, std::size_t num_unique_activities) {
  if (model.num_inner_nodes() == 0) throw MetricError("cannot replay on a model without activity nodes");
  if (num_unique_activities == 0) throw MetricError("number of unique activities must be positive");
  const double big_n = static_cast<double>(num_unique_activities);
  alpha_ = 0.5 / big_n;
  beta_ = 1.0 / big_n;
  inner_nodes_ = static_cast<double>(model.num_inner_nodes());

  const std::size_t k = log.num_unique_activities();
  width_ = k + 2;
  represented_.assign(k, 0);
  adjacency_.assign(width_ * width_, 0);

  // Model node -> log vertex, for plain activity nodes only.
  auto log_vertex = [&](NodeKind kind, const std::string& label) -> std::optional<std::size_t> {
    if (kind == NodeKind::Start) return kStartNode;
    if (kind == NodeKind::End) return kEndNode;
    if (kind != NodeKind::Activity) return std::nullopt;
    if (auto a = log.find(label)) return vertex_of(*a);
    return std::nullopt;
  };

  for (const auto& node : model.nodes())
    if (node.kind == NodeKind::Activity)
      if (auto a = log.find(node.label)) represented_[*a] = 1;

  if (model.num_meta_state_nodes() == 0) {
    for (const auto& e : model.edges()) {
      const auto& u = model.node(e.from);
      const auto& v = model.node(e.to);
      const auto lu = log_vertex(u.kind, u.label);
      const auto lv = log_vertex(v.kind, v.label);
      if (lu && lv) adjacency_[*lu * width_ + *lv] = 1;
    }
  } else {
    for (const auto& [u, v] : expanded_edges(model)) {
      const auto lu = log_vertex(u.kind, u.label);
      const auto lv = log_vertex(v.kind, v.label);
      if (lu && lv) adjacency_[*lu * width_ + *lv] = 1;
    }
  }
}

ReplayResult Replayer::replay(const Trace& trace) const {
  if (trace.events.empty()) throw MetricError("cannot replay an empty trace");
  ReplayResult r;
  for (ActivityId a : trace.events)
    if (represented_[a]) r.represented.push_back(a);
  const auto& s = r.represented;
  r.coverage = static_cast<double>(s.size()) / static_cast<double>(trace.events.size());
  r.skipped = s.size() < trace.events.size();
  if (!s.empty()) {
    if (!linked(kStartNode, vertex_of(s.front()))) ++r.forced;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (!linked(vertex_of(s[i]), vertex_of(s[i + 1]))) ++r.forced;
    if (!linked(vertex_of(s.back()), kEndNode)) ++r.forced;
  }
  const double raw = r.coverage - alpha_ * (r.skipped ? 1.0 : 0.0) -
                     beta_ * static_cast<double>(r.forced) / inner_nodes_;
  r.score = std::max(0.0, raw);
  return r;
}

double Replayer::score(const Trace& trace) const {
  const auto& ev = trace.events;
  if (ev.empty()) throw MetricError("cannot replay an empty trace");
  std::size_t kept = 0;
  std::size_t forced = 0;
  std::size_t prev = kStartNode;
  for (ActivityId a : ev) {
    if (!represented_[a]) continue;
    const std::size_t v = vertex_of(a);
    if (!linked(prev, v)) ++forced;
    prev = v;
    ++kept;
  }
  if (kept > 0 && !linked(prev, kEndNode)) ++forced;
  const double coverage = static_cast<double>(kept) / static_cast<double>(ev.size());
  const double raw = coverage - alpha_ * (kept < ev.size() ? 1.0 : 0.0) -
                     beta_ * static_cast<double>(forced) / inner_nodes_;
  return std::max(0.0, raw);
}

ReplayResult replay_trace(const ProcessModel& model, std::span<const std::string> trace,
                          std::size_t num_unique_activities) {
  if (trace.empty()) throw MetricError("cannot replay an empty trace");
  const EventLog single = EventLog::from_sequences({std::vector<std::string>(trace.begin(), trace.end())});
  return Replayer(model, single, num_unique_activities).replay(single.traces().front());
}

double fitness(const ProcessModel& model, const EventLog& log) {
  if (log.empty()) throw EmptyLogError("cannot compute fitness on an empty log");
  const Replayer replayer(model, log);
  double sum = 0.0;
  for (const auto& t : log.traces()) sum += replayer.score(t);
  return sum / static_cast<double>(log.num_traces());
}

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::AverageDegree: return "AD";
    case Measure::Entropy: return "H";
    case Measure::Density: return "Kn";
    case Measure::RelativeSize: return "R";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (Measure m : kAllMeasures)
    if (measure_name(m) == name) return m;
  return std::nullopt;
}

ElementCounts count_elements(const ProcessModel& model) {
  ElementCounts c;
  c.nodes = model.num_nodes();
  c.edges = model.num_edges();
  c.inner_nodes = model.num_inner_nodes();
  for (const auto& e : model.edges()) {
    if (e.from == e.to) ++c.self_loops;
    const bool touches_sentinel = e.from < 2 || e.to < 2;
    if (!touches_sentinel) ++c.inner_edges;
  }
  return c;
}

double average_degree(const ElementCounts& c) {
  if (c.nodes == 0) throw MetricError("average degree of a graph without nodes");
  return static_cast<double>(c.edges) / static_cast<double>(c.nodes);
}

double adjacency_entropy(const ElementCounts& c, double log_base) {
  if (c.nodes == 0) throw MetricError("entropy of a graph without nodes");
  if (!(log_base > 0.0) || log_base == 1.0) throw InvalidArgument("logarithm base must be positive and not 1");
  const double n = static_cast<double>(c.nodes);
  const double p = static_cast<double>(c.edges) / (n * n);
  auto term = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  const double h = -(term(p) + term(1.0 - p)) / std::log(log_base);
  return h + 0.0;  // normalises -0.0
}

double density(const ElementCounts& c) {
  if (c.nodes <= 1) throw MetricError("density needs at least two nodes");
  const double n = static_cast<double>(c.nodes);
  return static_cast<double>(c.edges - c.self_loops) / (n * (n - 1.0));
}

double relative_size(const ElementCounts& c, std::size_t unique_activities, std::size_t unique_transitions) {
  if (unique_transitions == 0) throw MetricError("relative size needs a log with at least one transition");
  if (unique_activities == 0) throw MetricError("relative size needs a log with at least one activity");
  return 0.5 * (static_cast<double>(c.inner_edges) / static_cast<double>(unique_transitions) +
                static_cast<double>(c.inner_nodes) / static_cast<double>(unique_activities));
}

namespace {

double measure_counts(const ElementCounts& c, Measure measure, std::size_t unique_activities,
                      std::size_t unique_transitions, double log_base) {
  switch (measure) {
    case Measure::AverageDegree: return average_degree(c);
    case Measure::Entropy: return adjacency_entropy(c, log_base);
    case Measure::Density: return density(c);
    case Measure::RelativeSize: return relative_size(c, unique_activities, unique_transitions);
  }
  throw InvalidArgument("unknown complexity measure");
}

}  // namespace

double complexity(const ProcessModel& model, Measure measure, const EventLog& log, double log_base) {
  return measure_counts(count_elements(model), measure, log.num_unique_activities(), log.num_unique_transitions(),
                        log_base);
}

ComplexityScale::ComplexityScale(const EventLog& log)
    : unique_activities_(log.num_unique_activities()),
      unique_transitions_(log.num_unique_transitions()),
      reference_(discover(log, RateParams{100.0, 100.0})) {}

double ComplexityScale::reference(Measure measure, double log_base) const {
  return measure_counts(count_elements(reference_), measure, unique_activities_, unique_transitions_, log_base);
}

double ComplexityScale::scaled(const ProcessModel& model, Measure measure, double log_base) const {
  const double ref = reference(measure, log_base);
  if (ref == 0.0) throw MetricError("reference complexity is zero");
  return measure_counts(count_elements(model), measure, unique_activities_, unique_transitions_, log_base) / ref;
}

double scaled_complexity(const ProcessModel& model, Measure measure, const EventLog& log, double log_base) {
  return ComplexityScale(log).scaled(model, measure, log_base);
}

}  // namespace flowmap
