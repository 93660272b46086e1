#include "flowmap/render.hpp"

#include "flowmap/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace flowmap {

using nlohmann::json;

namespace {

constexpr std::string_view kEmptySet = "\xE2\x88\x85";

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Start: return "start";
    case NodeKind::End: return "end";
    case NodeKind::Activity: return "activity";
    case NodeKind::MetaState: return "meta_state";
  }
  return "activity";
}

NodeKind parse_kind(const std::string& name) {
  if (name == "start") return NodeKind::Start;
  if (name == "end") return NodeKind::End;
  if (name == "activity") return NodeKind::Activity;
  if (name == "meta_state") return NodeKind::MetaState;
  throw FormatError("unknown node kind '" + name + "'");
}

// Five pen widths by share of the largest edge frequency.
int pen_level(std::uint64_t frequency, std::uint64_t max_frequency) {
  if (max_frequency == 0) return 1;
  const double share = static_cast<double>(frequency) / static_cast<double>(max_frequency);
  return std::clamp(static_cast<int>(std::ceil(share * 5.0)), 1, 5);
}

std::string join_tokens(const StateSet& states) {
  if (states.empty()) return std::string(kEmptySet);
  std::string out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i > 0) out += "|";
    out += token_label(states[i]);
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

double round_significant(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_dot(const ProcessModel& model, std::ostream& out) {
  std::uint64_t max_frequency = 0;
  for (const auto& e : model.edges()) max_frequency = std::max(max_frequency, e.frequency);

  out << "digraph process_map {\n";
  out << "  rankdir=TB;\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  out << "  edge [fontname=\"Helvetica\"];\n";
  for (NodeId id = 0; id < model.num_nodes(); ++id) {
    const Node& n = model.node(id);
    out << "  n" << id << " [label=" << dot_quote(n.label + "\n" + std::to_string(n.frequency));
    switch (n.kind) {
      case NodeKind::Start: out << ", shape=circle, style=filled, fillcolor=green"; break;
      case NodeKind::End: out << ", shape=doublecircle, style=filled, fillcolor=red"; break;
      case NodeKind::Activity: out << ", shape=box, style=rounded"; break;
      case NodeKind::MetaState: out << ", shape=box, peripheries=2, style=\"rounded,bold\""; break;
    }
    out << "];\n";
  }
  for (const auto& e : model.edges()) {
    out << "  n" << e.from << " -> n" << e.to << " [label=" << dot_quote(std::to_string(e.frequency))
        << ", penwidth=" << pen_level(e.frequency, max_frequency);
    if (e.repair) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
}

std::string to_dot(const ProcessModel& model) {
  std::ostringstream s;
  write_dot(model, s);
  return s.str();
}

std::string to_json(const ProcessModel& model) {
  json doc;
  doc["params"] = {{"activity_rate", round_significant(model.params().activity_rate)},
                   {"transition_rate", round_significant(model.params().transition_rate)}};
  json nodes = json::array();
  for (NodeId id = 0; id < model.num_nodes(); ++id) {
    const Node& n = model.node(id);
    nodes.push_back({{"id", id},
                     {"kind", kind_name(n.kind)},
                     {"label", n.label},
                     {"significance", round_significant(n.significance)},
                     {"frequency", n.frequency},
                     {"members", n.members}});
  }
  json edges = json::array();
  for (const auto& e : model.edges())
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"significance", round_significant(e.significance)},
                     {"frequency", e.frequency},
                     {"repair", e.repair}});
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

ProcessModel model_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    RateParams params{doc.at("params").at("activity_rate").get<double>(),
                      doc.at("params").at("transition_rate").get<double>()};
    std::vector<Node> nodes;
    for (const auto& n : doc.at("nodes")) {
      if (n.at("id").get<std::size_t>() != nodes.size()) throw FormatError("node ids must be 0, 1, ... in order");
      nodes.push_back({parse_kind(n.at("kind").get<std::string>()), n.at("label").get<std::string>(),
                       n.at("significance").get<double>(), n.at("frequency").get<std::uint64_t>(),
                       n.at("members").get<std::vector<std::string>>()});
    }
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges"))
      edges.push_back({e.at("from").get<NodeId>(), e.at("to").get<NodeId>(), e.at("significance").get<double>(),
                       e.at("frequency").get<std::uint64_t>(), e.at("repair").get<bool>()});
    return ProcessModel(std::move(nodes), std::move(edges), params);
  } catch (const json::exception& ex) {
    throw FormatError(std::string("invalid model JSON: ") + ex.what());
  } catch (const InvalidArgument& ex) {
    throw FormatError(std::string("invalid model JSON: ") + ex.what());
  }
}

void write_landscape_csv(const Landscape& landscape, std::ostream& out) {
  out << "r_a,r_t,fitness,complexity_scaled,objective,nodes,edges,meta_states\n";
  for (const auto& c : landscape.cells)
    out << format_number(c.params.activity_rate) << ',' << format_number(c.params.transition_rate) << ','
        << format_number(c.fitness) << ',' << format_number(c.complexity) << ',' << format_number(c.objective)
        << ',' << c.nodes << ',' << c.edges << ',' << c.meta_states << '\n';
}

void write_summary(const Landscape& landscape, std::ostream& out) {
  const Cell& c = landscape.optimum();
  std::size_t degenerate = 0;
  for (const auto& cell : landscape.cells) degenerate += cell.degenerate ? 1 : 0;
  out << "measure " << measure_name(landscape.config.measure) << ", lambda " << format_number(landscape.config.lambda)
      << ", step " << landscape.config.step << ", " << landscape.cells.size() << " cells";
  if (degenerate > 0) out << " (" << degenerate << " without activities)";
  out << "\n";
  out << "optimum r_a=" << format_number(c.params.activity_rate) << " r_t=" << format_number(c.params.transition_rate)
      << " F=" << format_number(c.fitness) << " J=" << format_number(c.raw_complexity)
      << " C=" << format_number(c.complexity) << " Q=" << format_number(c.objective) << " nodes=" << c.nodes
      << " edges=" << c.edges << " meta_states=" << c.meta_states << "\n";
}

void write_cycles_report(std::span<const Cycle> cycles, double threshold, std::ostream& out) {
  std::vector<const Cycle*> order;
  for (const auto& c : cycles) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Cycle* a, const Cycle* b) {
    if (a->significance != b->significance) return a->significance > b->significance;
    return a->body < b->body;
  });
  out << "body,occurrences,cases,significance,meta_state\n";
  for (const Cycle* c : order) {
    std::string body;
    for (std::size_t i = 0; i < c->body.size(); ++i) {
      if (i > 0) body += ' ';
      body += c->body[i];
    }
    const bool state = c->body.size() > 1 && c->significance >= threshold;
    out << csv_field(body) << ',' << c->occurrences << ',' << c->cases << ',' << format_number(c->significance)
        << ',' << (state ? "yes" : "no") << '\n';
  }
}

void write_combinations_csv(const CombinationMap& map, std::ostream& out) {
  out << "r_a,r_t,combination,states\n";
  for (std::size_t i = 0; i < map.grid.size(); ++i) {
    const std::size_t id = map.combination_of[i];
    out << format_number(map.grid[i].activity_rate) << ',' << format_number(map.grid[i].transition_rate) << ','
        << id << ',' << csv_field(join_tokens(map.combinations[id].states)) << '\n';
  }
}

void write_combination_dot(const CombinationGraph& graph, std::ostream& out) {
  out << "digraph combinations {\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& c = graph.nodes[i];
    out << "  c" << i << " [label=" << dot_quote(join_tokens(c.states) + "\ncoverage " + format_number(c.coverage))
        << "];\n";
  }
  for (const auto& e : graph.edges) out << "  c" << e.from << " -> c" << e.to << " [label=" << dot_quote(e.label) << "];\n";
  out << "}\n";
}

}  // namespace flowmap
