#include "flowmap/error.hpp"
#include "flowmap/event_log.hpp"

#include <cmath>
#include <map>
#include <random>

namespace flowmap {

namespace {

constexpr std::size_t kMaxWalkLength = 1'000'000;

struct WalkGraph {
  std::vector<std::string> names;  // 0 = start, 1 = end
  std::vector<std::vector<std::size_t>> targets;
  std::vector<std::vector<double>> weights;
};

WalkGraph build_graph(const GeneratorModel& model) {
  WalkGraph g;
  std::map<std::string, std::size_t, std::less<>> index;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = index.try_emplace(name, g.names.size());
    if (inserted) {
      g.names.push_back(name);
      g.targets.emplace_back();
      g.weights.emplace_back();
    }
    return it->second;
  };
  intern(std::string(GeneratorModel::kStart));
  intern(std::string(GeneratorModel::kEnd));
  for (const auto& arc : model.arcs) {
    if (!(arc.weight > 0.0) || !std::isfinite(arc.weight))
      throw GenerationError("arc " + arc.from + " -> " + arc.to + " has a non-positive weight");
    const std::size_t u = intern(arc.from);
    const std::size_t v = intern(arc.to);
    if (v == 0) throw GenerationError("arc into the start node");
    if (u == 1) throw GenerationError("arc out of the end node");
    if (u == 0 && v == 1) throw GenerationError("start -> end arc would produce an empty trace");
    g.targets[u].push_back(v);
    g.weights[u].push_back(arc.weight);
  }
  return g;
}

// Every node a walk can visit must still be able to reach end, otherwise a
// walk can get stuck or never terminate.
void check_termination(const WalkGraph& g) {
  const std::size_t n = g.names.size();
  std::vector<bool> from_start(n, false);
  std::vector<std::size_t> stack{0};
  from_start[0] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : g.targets[u])
      if (!from_start[v]) {
        from_start[v] = true;
        stack.push_back(v);
      }
  }
  if (!from_start[1]) throw GenerationError("no path from start to end");

  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : g.targets[u]) reverse[v].push_back(u);
  std::vector<bool> to_end(n, false);
  to_end[1] = true;
  stack.assign(1, 1);
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : reverse[v])
      if (!to_end[u]) {
        to_end[u] = true;
        stack.push_back(u);
      }
  }
  for (std::size_t u = 0; u < n; ++u)
    if (from_start[u] && !to_end[u]) throw GenerationError("no terminating path from '" + g.names[u] + "'");
}

}  // namespace

EventLog generate_synthetic(const GeneratorModel& model, std::uint64_t seed, std::size_t num_cases) {
  if (num_cases == 0) throw EmptyLogError("requested a log with zero cases");
  const WalkGraph g = build_graph(model);
  check_termination(g);

  std::vector<std::discrete_distribution<std::size_t>> choose;
  choose.reserve(g.names.size());
  for (const auto& w : g.weights) choose.emplace_back(w.begin(), w.end());

  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::string, std::vector<std::string>>> traces;
  traces.reserve(num_cases);
  for (std::size_t c = 0; c < num_cases; ++c) {
    std::vector<std::string> events;
    std::size_t node = 0;
    for (;;) {
      node = g.targets[node][choose[node](rng)];
      if (node == 1) break;
      events.push_back(g.names[node]);
      if (events.size() > kMaxWalkLength) throw GenerationError("walk exceeded the maximum trace length");
    }
    traces.emplace_back("case" + std::to_string(c + 1), std::move(events));
  }
  return EventLog::from_traces(traces);
}

}  // namespace flowmap
