#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flowmap {

/// Index of an activity label in a log's alphabet. The alphabet is kept in
/// lexicographic order, so comparing ids compares labels.
using ActivityId = std::uint32_t;

struct Trace {
  std::string case_id;
  std::vector<ActivityId> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// A flat event log: traces of activity labels grouped by case.
///
/// Immutable after construction. Two counts are kept apart on purpose:
/// num_traces() is the number of cases, num_unique_activities() the size of
/// the alphabet.
class EventLog {
 public:
  EventLog() = default;

  /// Builds a log from labelled traces, in the given order. Labels are used
  /// verbatim. Throws InvalidArgument on an empty trace.
  static EventLog from_traces(
      const std::vector<std::pair<std::string, std::vector<std::string>>>& traces);

  /// Convenience for tests and generators: case ids are "1", "2", ...
  static EventLog from_sequences(const std::vector<std::vector<std::string>>& sequences);

  const std::vector<Trace>& traces() const { return traces_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& label(ActivityId id) const { return alphabet_[id]; }
  std::optional<ActivityId> find(std::string_view label) const;

  std::size_t num_traces() const { return traces_.size(); }
  std::size_t num_unique_activities() const { return alphabet_.size(); }
  std::size_t num_unique_transitions() const { return num_unique_transitions_; }
  std::size_t total_events() const { return total_events_; }
  bool empty() const { return traces_.empty(); }

  std::vector<std::string> labels_of(const Trace& trace) const;

  friend bool operator==(const EventLog&, const EventLog&) = default;

 private:
  std::vector<std::string> alphabet_;
  std::vector<Trace> traces_;
  std::size_t num_unique_transitions_ = 0;
  std::size_t total_events_ = 0;
};

struct ParseOptions {
  std::string case_column = "case_id";
  std::string activity_column = "activity";
  /// Used for ordering when the header contains it.
  std::string timestamp_column = "timestamp";
  /// When set, a missing timestamp column is a format error.
  bool require_timestamp = false;
  char delimiter = ',';
};

/// Parses delimiter-separated text with a header row. Events are grouped by
/// case id (cases in order of first appearance) and ordered by timestamp when
/// one is available, by row order otherwise.
EventLog parse_log(std::istream& source, const ParseOptions& options = {});
EventLog parse_log_file(const std::string& path, const ParseOptions& options = {});

/// Writes the log as `case_id,activity` rows, one per event.
void write_log(const EventLog& log, std::ostream& out, const ParseOptions& options = {});

/// Parses an ISO-8601 date or date-time into microseconds since the Unix
/// epoch. Accepts `YYYY-MM-DD`, optionally followed by `T` or a space,
/// `HH:MM[:SS[.ffffff]]` and a `Z` or `+HH:MM` offset.
std::optional<std::int64_t> parse_iso8601(std::string_view text);

// Synthetic logs ------------------------------------------------------------

/// Weighted directly-follows graph used to generate logs. The reserved
/// endpoint names kStart and kEnd denote the sentinels.
struct GeneratorModel {
  static constexpr std::string_view kStart = "<start>";
  static constexpr std::string_view kEnd = "<end>";

  struct Arc {
    std::string from;
    std::string to;
    double weight = 1.0;
  };
  std::vector<Arc> arcs;
};

/// Random start-to-end walks of the model, each step choosing an outgoing arc
/// with probability proportional to its weight. Deterministic for a seed.
EventLog generate_synthetic(const GeneratorModel& model, std::uint64_t seed, std::size_t num_cases);

}  // namespace flowmap
