#include "flowmap/discovery.hpp"
#include "flowmap/error.hpp"
#include "flowmap/metastates.hpp"
#include "flowmap/significance.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <map>

namespace flowmap {

std::vector<RateParams> rate_grid(int step) {
  if (step < 1 || step > 50 || 100 % step != 0) throw InvalidArgument("grid step must lie in 1..50 and divide 100");
  std::vector<RateParams> grid;
  for (int a = 0; a <= 100; a += step)
    for (int t = 0; t <= 100; t += step) grid.push_back({static_cast<double>(a), static_cast<double>(t)});
  return grid;
}

std::vector<std::string> Combination::tokens() const {
  std::vector<std::string> out;
  out.reserve(states.size());
  for (const auto& body : states) out.push_back(token_label(body));
  return out;
}

CombinationMap group_combinations(std::vector<RateParams> grid, std::vector<StateSet> cell_states) {
  if (grid.size() != cell_states.size()) throw InvalidArgument("one state set per grid cell expected");
  if (grid.empty()) throw InvalidArgument("empty grid");
  for (auto& s : cell_states) std::sort(s.begin(), s.end());

  auto less = [](const StateSet& a, const StateSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  };
  std::vector<StateSet> distinct = cell_states;
  std::sort(distinct.begin(), distinct.end(), less);
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  CombinationMap out;
  out.grid = std::move(grid);
  for (auto& s : distinct) out.combinations.push_back({std::move(s), 0.0, 0});
  out.combination_of.reserve(cell_states.size());
  for (const auto& s : cell_states) {
    const auto it = std::lower_bound(out.combinations.begin(), out.combinations.end(), s,
                                     [&](const Combination& c, const StateSet& v) { return less(c.states, v); });
    const auto id = static_cast<std::size_t>(it - out.combinations.begin());
    out.combination_of.push_back(id);
    ++out.combinations[id].cells;
  }
  for (auto& c : out.combinations)
    c.coverage = static_cast<double>(c.cells) / static_cast<double>(out.grid.size());
  return out;
}

CombinationMap combination_map(const EventLog& log, std::span<const RateParams> grid, double threshold) {
  if (grid.empty()) throw InvalidArgument("empty grid");
  if (log.empty()) throw EmptyLogError("cannot map meta-states of an empty log");
  const auto table = compute_significance(log);
  const auto candidates = find_states(cycles_search(log), log.num_traces(), threshold);

  std::vector<StateSet> cells(grid.size());
  detail::parallel_for(grid.size(), 0, [&](std::size_t i) {
    const ProcessModel model = discover(log, table, grid[i]);
    for (const auto& s : states_in_model(model, candidates)) cells[i].push_back(s.body());
  });
  return group_combinations(std::vector<RateParams>(grid.begin(), grid.end()), std::move(cells));
}

CombinationGraph combination_graph(const CombinationMap& map) {
  if (map.combinations.empty()) throw InvalidArgument("no combinations");
  CombinationGraph g;
  g.nodes = map.combinations;
  const std::size_t k = g.nodes.size();

  // Grid axes, so that neighbours are adjacent values along one rate.
  std::vector<double> ra, rt;
  for (const auto& p : map.grid) {
    ra.push_back(p.activity_rate);
    rt.push_back(p.transition_rate);
  }
  for (auto* axis : {&ra, &rt}) {
    std::sort(axis->begin(), axis->end());
    axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
  }
  auto index_on = [](const std::vector<double>& axis, double v) {
    return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell_at;
  for (std::size_t c = 0; c < map.grid.size(); ++c)
    cell_at[{index_on(ra, map.grid[c].activity_rate), index_on(rt, map.grid[c].transition_rate)}] = c;

  auto proper_subset = [](const StateSet& a, const StateSet& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };

  std::set<std::pair<std::size_t, std::size_t>> links;
  for (const auto& [pos, c] : cell_at) {
    for (const auto& next : {std::pair{pos.first + 1, pos.second}, std::pair{pos.first, pos.second + 1}}) {
      const auto it = cell_at.find(next);
      if (it == cell_at.end()) continue;
      const std::size_t a = map.combination_of[c];
      const std::size_t b = map.combination_of[it->second];
      if (proper_subset(g.nodes[a].states, g.nodes[b].states)) links.emplace(a, b);
      if (proper_subset(g.nodes[b].states, g.nodes[a].states)) links.emplace(b, a);
    }
  }

  std::vector<std::size_t> degree(k, 0);
  for (const auto& [a, b] : links) {
    CombinationEdge e{a, b, {}, "+"};
    std::set_difference(g.nodes[b].states.begin(), g.nodes[b].states.end(), g.nodes[a].states.begin(),
                        g.nodes[a].states.end(), std::back_inserter(e.added));
    for (std::size_t i = 0; i < e.added.size(); ++i) {
      if (i > 0) e.label += "|";
      e.label += compact_body(e.added[i]);
    }
    g.edges.push_back(std::move(e));
    ++degree[a];
    ++degree[b];
  }
  g.degree_centrality.resize(k, 0.0);
  if (k > 1)
    for (std::size_t i = 0; i < k; ++i)
      g.degree_centrality[i] = static_cast<double>(degree[i]) / static_cast<double>(k - 1);
  return g;
}

}  // namespace flowmap
