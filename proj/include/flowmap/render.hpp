#pragma once

#include "flowmap/metastates.hpp"
#include "flowmap/optimizer.hpp"
#include "flowmap/process_model.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace flowmap {

/// Six significant digits, printf "%g" style.
std::string format_number(double value);
/// The value rounded to six significant digits.
double round_significant(double value);

/// Graphviz digraph of the model. Nodes are emitted as n0, n1, ... in model
/// order and edges in (from, to) order, so equal models give equal text.
void write_dot(const ProcessModel& model, std::ostream& out);
std::string to_dot(const ProcessModel& model);

/// JSON document with params, nodes (array index is the node id) and edges.
std::string to_json(const ProcessModel& model);
/// Inverse of to_json. Throws FormatError on malformed input.
ProcessModel model_from_json(std::string_view text);

/// Header r_a,r_t,fitness,complexity_scaled,objective,nodes,edges,meta_states
/// and one row per cell.
void write_landscape_csv(const Landscape& landscape, std::ostream& out);

/// Human-readable optimum summary.
void write_summary(const Landscape& landscape, std::ostream& out);

/// One CSV row per cycle: body, occurrences, cases, significance, meta_state.
/// Sorted by significance descending, then body.
void write_cycles_report(std::span<const Cycle> cycles, double threshold, std::ostream& out);

/// r_a,r_t,combination,states per grid cell; an empty set prints as "∅".
void write_combinations_csv(const CombinationMap& map, std::ostream& out);

/// Combination graph: node labels list member states and coverage, edge
/// labels the added states.
void write_combination_dot(const CombinationGraph& graph, std::ostream& out);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace flowmap
