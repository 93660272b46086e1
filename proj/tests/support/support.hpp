#pragma once

#include "flowmap/event_log.hpp"
#include "flowmap/metastates.hpp"
#include "flowmap/process_model.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testing {

using Sequences = std::vector<std::vector<std::string>>;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  bool chance(double p) { return real() < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct LogShape {
  std::size_t max_cases = 60;
  std::size_t max_length = 12;
  std::size_t max_alphabet = 6;
};

/// Traces drawn from a random sparse Markov chain over single-letter labels,
/// so that logs have dominant paths, rare branches and loops.
Sequences random_sequences(Rng& rng, const LogShape& shape = {});
flowmap::EventLog random_log(Rng& rng, const LogShape& shape = {});

Sequences repeat(const std::vector<std::pair<std::string, std::size_t>>& traces);
flowmap::EventLog log_of(const std::vector<std::pair<std::string, std::size_t>>& traces);

// Brute-force oracles over labels ---------------------------------------------

struct Counts {
  std::uint64_t occurrences = 0;
  std::uint64_t cases = 0;
  bool operator==(const Counts&) const = default;
};

using Body = std::vector<std::string>;

/// Every segment between consecutive equal labels whose labels are distinct.
std::map<Body, Counts> brute_cycles(const Sequences& traces);

struct BruteTable {
  std::map<std::string, Counts> activities;
  std::map<std::pair<std::string, std::string>, Counts> transitions;
  std::map<std::string, std::uint64_t> starts;
  std::map<std::string, std::uint64_t> ends;
};
BruteTable brute_table(const Sequences& traces);

/// Start / end may be addressed as "<start>" / "<end>".
std::set<std::pair<std::string, std::string>> label_edges(const flowmap::ProcessModel& model);
std::set<std::string> label_nodes(const flowmap::ProcessModel& model);

/// Non-sentinel nodes missing a path from start or to end, by label.
std::vector<std::string> reachability_violations(const flowmap::ProcessModel& model);

/// Replay score computed straight from the definition, over label sets.
double brute_trace_score(const std::set<std::string>& nodes,
                         const std::set<std::pair<std::string, std::string>>& edges,
                         const std::vector<std::string>& trace, std::size_t unique_activities);

/// Checks text against the Graphviz DOT grammar. Returns an empty string when
/// valid, else a description of the first problem.
std::string dot_syntax_error(const std::string& text);

}  // namespace testing
