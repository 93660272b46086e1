#pragma once

#include "flowmap/event_log.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flowmap {

/// A trace whose positions may stand for several labels at once. Produced by
/// inner meta-state aggregation, where one hidden event is redirected to every
/// meta-state that contains it. Position i covers
/// labels[offsets[i] .. offsets[i+1]).
struct LabelSetTrace {
  std::vector<std::uint32_t> offsets{0};
  std::vector<ActivityId> labels;

  std::size_t size() const { return offsets.size() - 1; }
  std::span<const ActivityId> at(std::size_t i) const {
    return {labels.data() + offsets[i], labels.data() + offsets[i + 1]};
  }
  void push(std::span<const ActivityId> position);
};

struct TransitionCount {
  ActivityId from;
  ActivityId to;
  std::uint64_t cases;
  std::uint64_t occurrences;
};

/// Case and absolute frequencies of activities, directly-follows transitions
/// and start/end positions.
///
/// Case frequency counts a trace at most once per element. Significance is
/// the case frequency divided by the number of traces; elements that never
/// occur have no significance (nullopt), never zero.
class SignificanceTable {
 public:
  std::size_t num_traces() const { return num_traces_; }
  std::size_t num_labels() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& label(ActivityId a) const { return alphabet_[a]; }

  std::uint64_t activity_cases(ActivityId a) const { return activity_cases_[a]; }
  std::uint64_t activity_occurrences(ActivityId a) const { return activity_abs_[a]; }
  std::uint64_t transition_cases(ActivityId a, ActivityId b) const { return transition_cases_[a * n() + b]; }
  std::uint64_t transition_occurrences(ActivityId a, ActivityId b) const { return transition_abs_[a * n() + b]; }
  std::uint64_t start_cases(ActivityId a) const { return start_cases_[a]; }
  std::uint64_t end_cases(ActivityId a) const { return end_cases_[a]; }

  std::optional<double> activity_significance(ActivityId a) const { return ratio(activity_cases_[a]); }
  std::optional<double> transition_significance(ActivityId a, ActivityId b) const {
    return ratio(transition_cases(a, b));
  }
  std::optional<double> start_significance(ActivityId a) const { return ratio(start_cases_[a]); }
  std::optional<double> end_significance(ActivityId a) const { return ratio(end_cases_[a]); }

  /// Observed transitions in (from, to) order.
  const std::vector<TransitionCount>& transitions() const { return transitions_; }

  double fraction(std::uint64_t cases) const { return static_cast<double>(cases) / static_cast<double>(num_traces_); }

 private:
  friend SignificanceTable compute_significance(std::vector<std::string>, std::span<const LabelSetTrace>,
                                                const std::vector<bool>*);
  friend SignificanceTable compute_significance(const EventLog&, const std::vector<bool>*);

  std::size_t n() const { return alphabet_.size(); }
  std::optional<double> ratio(std::uint64_t cases) const {
    if (cases == 0) return std::nullopt;
    return fraction(cases);
  }
  void init(std::vector<std::string> alphabet, std::size_t num_traces);
  void finish();

  std::vector<std::string> alphabet_;
  std::size_t num_traces_ = 0;
  std::vector<std::uint64_t> activity_cases_, activity_abs_;
  std::vector<std::uint64_t> transition_cases_, transition_abs_;
  std::vector<std::uint64_t> start_cases_, end_cases_;
  std::vector<TransitionCount> transitions_;
};

/// Frequencies over the log. With `keep`, every trace is first projected
/// onto the kept activities (events of other activities are dropped, so the
/// neighbours of a dropped event become directly-follows); traces that become
/// empty still count towards num_traces(). Throws EmptyLogError on an empty log.
SignificanceTable compute_significance(const EventLog& log, const std::vector<bool>* keep = nullptr);

/// Same contract for set-valued traces over an explicit sorted alphabet. A
/// pair of adjacent positions contributes every (x, y) with x in the first
/// position and y in the second.
SignificanceTable compute_significance(std::vector<std::string> alphabet, std::span<const LabelSetTrace> traces,
                                       const std::vector<bool>* keep = nullptr);

/// A two-way relation: both a -> b and b -> a occur somewhere in the log.
struct ConflictPair {
  ActivityId first;   // first < second
  ActivityId second;
  double forward;     // significance of first -> second
  double backward;    // significance of second -> first
};

std::vector<ConflictPair> conflict_pairs(const SignificanceTable& table);

}  // namespace flowmap
