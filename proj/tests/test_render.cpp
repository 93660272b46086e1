#include "flowmap/discovery.hpp"
#include "flowmap/error.hpp"
#include "flowmap/render.hpp"

#include "support/support.hpp"

#include <doctest.h>

#include <regex>
#include <sstream>

using namespace flowmap;
using testing::Rng;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

EventLog nested_loop_log() { return testing::log_of({{"ABCBE", 3}, {"ABCDBE", 4}, {"ABCBCDBE", 3}, {"ACE", 1}}); }

}  // namespace

TEST_CASE("numbers use six significant digits") {
  CHECK(format_number(6.0 / 11.0) == "0.545455");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(100.0) == "100");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1234567.0) == "1.23457e+06");
  CHECK(round_significant(2.0 / 3.0) == 0.666667);
}

TEST_CASE("CSV field quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("DOT output styles sentinels, repair edges and meta-states") {
  const EventLog log = testing::log_of({{"A", 7}, {"AB", 2}, {"B", 1}});
  const std::string dot = to_dot(discover(log, {100, 50}));
  CHECK(testing::dot_syntax_error(dot) == "");
  CHECK(dot.find("n0 [label=\"start\\n10\", shape=circle, style=filled, fillcolor=green]") != std::string::npos);
  CHECK(dot.find("fillcolor=red") != std::string::npos);
  CHECK(dot.find("n2 -> n3 [label=\"2\", penwidth=2, style=dashed]") != std::string::npos);
  CHECK(dot.find("n0 -> n2 [label=\"9\", penwidth=5]") != std::string::npos);

  const auto outer = aggregate(nested_loop_log(), {100, 100}, AggregationMode::Outer);
  const std::string meta = to_dot(outer.model);
  CHECK(testing::dot_syntax_error(meta) == "");
  CHECK(meta.find("[B\xC2\xB7" "C]\\n6\", shape=box, peripheries=2") != std::string::npos);
}

TEST_CASE("DOT labels are escaped") {
  const EventLog log = EventLog::from_sequences({{"say \"hi\"", "back\\slash", "line\nbreak"}});
  const std::string dot = to_dot(discover(log, {100, 100}));
  CHECK(testing::dot_syntax_error(dot) == "");
  CHECK(dot.find("say \\\"hi\\\"") != std::string::npos);
}

TEST_CASE("the grammar check rejects malformed DOT") {
  CHECK(testing::dot_syntax_error("digraph { a -> b; }") == "");
  CHECK(testing::dot_syntax_error("digraph g { node [shape=box]; a; b [label=\"x\"]; a -> b -> c [w=1.5]; }") == "");
  CHECK(testing::dot_syntax_error("graph { a -- b }") == "");
  CHECK(testing::dot_syntax_error("digraph { a -- b }") != "");
  CHECK(testing::dot_syntax_error("digraph { a -> }") != "");
  CHECK(testing::dot_syntax_error("digraph { a [label=\"x] }") != "");
  CHECK(testing::dot_syntax_error("digraph { a [label] }") != "");
  CHECK(testing::dot_syntax_error("digraph { a -> b") != "");
  CHECK(testing::dot_syntax_error("digraph { a } }") != "");
}

TEST_CASE("property: every emitted model DOT parses and is deterministic") {
  Rng rng(71);
  for (int i = 0; i < 40; ++i) {
    const EventLog log = testing::random_log(rng);
    for (const RateParams p : {RateParams{100, 100}, RateParams{40, 20}}) {
      for (auto mode : {AggregationMode::None, AggregationMode::Outer, AggregationMode::InnerFreq}) {
        const auto m = aggregate(log, p, mode, 0.2).model;
        const std::string dot = to_dot(m);
        CHECK(testing::dot_syntax_error(dot) == "");
        CHECK(dot == to_dot(aggregate(log, p, mode, 0.2).model));
        const std::regex width("penwidth=([0-9]+)");
        for (std::sregex_iterator it(dot.begin(), dot.end(), width), end; it != end; ++it) {
          const int w = std::stoi((*it)[1]);
          CHECK(w >= 1);
          CHECK(w <= 5);
        }
      }
    }
  }
}

TEST_CASE("model JSON carries the full annotation") {
  const EventLog log = testing::log_of({{"A", 7}, {"AB", 2}, {"B", 1}});
  const std::string json = to_json(discover(log, {100, 50}));
  CHECK(json.find("\"activity_rate\": 100.0") != std::string::npos);
  CHECK(json.find("\"transition_rate\": 50.0") != std::string::npos);
  CHECK(json.find("\"kind\": \"start\"") != std::string::npos);
  CHECK(json.find("\"repair\": true") != std::string::npos);
  CHECK(json.find("\"significance\": 0.3") != std::string::npos);
}

TEST_CASE("property: JSON to model to JSON is the identity") {
  Rng rng(72);
  for (int i = 0; i < 40; ++i) {
    const EventLog log = testing::random_log(rng);
    for (auto mode : {AggregationMode::None, AggregationMode::InnerAll}) {
      const auto m = aggregate(log, {70, 30}, mode, 0.2).model;
      const std::string json = to_json(m);
      const ProcessModel back = model_from_json(json);
      CHECK(to_json(back) == json);
      CHECK(back.num_edges() == m.num_edges());
      CHECK(back.num_meta_state_nodes() == m.num_meta_state_nodes());
      CHECK(to_dot(back) == to_dot(m));
    }
  }
}

TEST_CASE("malformed model JSON is a format error") {
  CHECK_THROWS_AS(model_from_json("{"), FormatError);
  CHECK_THROWS_AS(model_from_json("{\"nodes\": []}"), FormatError);
  const EventLog log = testing::log_of({{"AB", 1}});
  std::string json = to_json(discover(log, {100, 100}));
  json.replace(json.find("\"activity\""), 10, "\"gadget\"");
  CHECK_THROWS_AS(model_from_json(json), FormatError);
}

TEST_CASE("landscape CSV") {
  const EventLog log = testing::log_of({{"ABC", 3}, {"AC", 1}});
  ObjectiveConfig c;
  const auto land = grid_search(log, c);
  std::ostringstream out;
  write_landscape_csv(land, out);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 442);
  CHECK(rows[0] == "r_a,r_t,fitness,complexity_scaled,objective,nodes,edges,meta_states");
  CHECK(rows[1].rfind("0,0,", 0) == 0);
  CHECK(rows[2].rfind("0,5,", 0) == 0);
  CHECK(rows[22].rfind("5,0,", 0) == 0);
  CHECK(rows[441] == "100,100,1,1,0.4,5,5,0");
  std::ostringstream summary;
  write_summary(land, summary);
  CHECK(summary.str().find("optimum r_a=") != std::string::npos);
}

TEST_CASE("cycle report") {
  const EventLog log = testing::log_of({{"ABA", 2}, {"AC", 1}});
  const auto cycles = cycles_search(log);
  std::ostringstream half, strict;
  write_cycles_report(cycles, 0.5, half);
  write_cycles_report(cycles, 0.7, strict);
  CHECK(lines(half.str()) == std::vector<std::string>{"body,occurrences,cases,significance,meta_state",
                                                      "A B,2,2,0.666667,yes"});
  CHECK(lines(strict.str())[1] == "A B,2,2,0.666667,no");

  std::ostringstream none;
  write_cycles_report(cycles_search(testing::log_of({{"ABC", 2}})), 0.5, none);
  CHECK(lines(none.str()).size() == 1);
}

TEST_CASE("cycle report order: significance descending, then body") {
  const EventLog log = testing::log_of({{"ABAB", 2}, {"CDC", 2}, {"EE", 1}});
  std::ostringstream out;
  write_cycles_report(cycles_search(log), 0.3, out);
  CHECK(lines(out.str()) == std::vector<std::string>{"body,occurrences,cases,significance,meta_state",
                                                     "A B,2,2,0.4,yes", "B A,2,2,0.4,yes", "C D,2,2,0.4,yes",
                                                     "E,1,1,0.2,no"});
}

TEST_CASE("combination outputs") {
  const EventLog log = testing::log_of({{"ABCBE", 4}, {"ABCE", 6}});
  const auto map = combination_map(log, rate_grid(50), 0.3);
  std::ostringstream csv, dot;
  write_combinations_csv(map, csv);
  const auto rows = lines(csv.str());
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "r_a,r_t,combination,states");
  CHECK(rows[1] == "0,0,0,\xE2\x88\x85");
  CHECK(rows[3] == "0,100,1,[B\xC2\xB7" "C]");
  write_combination_dot(combination_graph(map), dot);
  CHECK(testing::dot_syntax_error(dot.str()) == "");
  CHECK(dot.str().find("label=\"+BC\"") != std::string::npos);
  CHECK(dot.str().find("coverage 0.666667") != std::string::npos);
}
