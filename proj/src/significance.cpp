#include "flowmap/significance.hpp"

#include "flowmap/error.hpp"

#include <algorithm>

namespace flowmap {

void LabelSetTrace::push(std::span<const ActivityId> position) {
  labels.insert(labels.end(), position.begin(), position.end());
  offsets.push_back(static_cast<std::uint32_t>(labels.size()));
}

void SignificanceTable::init(std::vector<std::string> alphabet, std::size_t num_traces) {
  alphabet_ = std::move(alphabet);
  num_traces_ = num_traces;
  const std::size_t k = alphabet_.size();
  activity_cases_.assign(k, 0);
  activity_abs_.assign(k, 0);
  start_cases_.assign(k, 0);
  end_cases_.assign(k, 0);
  transition_cases_.assign(k * k, 0);
  transition_abs_.assign(k * k, 0);
}

void SignificanceTable::finish() {
  transitions_.clear();
  const std::size_t k = n();
  for (ActivityId a = 0; a < k; ++a)
    for (ActivityId b = 0; b < k; ++b)
      if (transition_abs_[a * k + b] > 0)
        transitions_.push_back({a, b, transition_cases_[a * k + b], transition_abs_[a * k + b]});
}

namespace {

// Accumulates frequencies one trace at a time. Case counts use a per-element
// stamp holding the index of the last trace that touched it.
class Counter {
 public:
  Counter(std::size_t k, std::vector<std::uint64_t>& act_cases,
          std::vector<std::uint64_t>& act_abs, std::vector<std::uint64_t>& tr_cases,
          std::vector<std::uint64_t>& tr_abs, std::vector<std::uint64_t>& start, std::vector<std::uint64_t>& end)
      : k_(k),
        act_cases_(act_cases),
        act_abs_(act_abs),
        tr_cases_(tr_cases),
        tr_abs_(tr_abs),
        start_(start),
        end_(end),
        act_stamp_(k, 0),
        tr_stamp_(k * k, 0) {}

  void begin_trace() {
    ++stamp_;
    prev_.clear();
    first_ = true;
  }

  void position(std::span<const ActivityId> here) {
    if (here.empty()) return;
    for (ActivityId a : here) {
      ++act_abs_[a];
      if (act_stamp_[a] != stamp_) {
        act_stamp_[a] = stamp_;
        ++act_cases_[a];
      }
      if (first_) ++start_[a];
    }
    for (ActivityId u : prev_)
      for (ActivityId v : here) {
        const std::size_t idx = u * k_ + v;
        ++tr_abs_[idx];
        if (tr_stamp_[idx] != stamp_) {
          tr_stamp_[idx] = stamp_;
          ++tr_cases_[idx];
        }
      }
    first_ = false;
    prev_.assign(here.begin(), here.end());
  }

  void end_trace() {
    for (ActivityId a : prev_) ++end_[a];
  }

 private:
  std::size_t k_;
  std::vector<std::uint64_t>& act_cases_;
  std::vector<std::uint64_t>& act_abs_;
  std::vector<std::uint64_t>& tr_cases_;
  std::vector<std::uint64_t>& tr_abs_;
  std::vector<std::uint64_t>& start_;
  std::vector<std::uint64_t>& end_;
  std::vector<std::uint32_t> act_stamp_;
  std::vector<std::uint32_t> tr_stamp_;
  std::uint32_t stamp_ = 0;
  std::vector<ActivityId> prev_;
  bool first_ = true;
};

}  // namespace

SignificanceTable compute_significance(const EventLog& log, const std::vector<bool>* keep) {
  if (log.empty()) throw EmptyLogError("cannot compute significance of an empty log");
  SignificanceTable t;
  t.init(log.alphabet(), log.num_traces());
  const std::size_t k = t.n();
  Counter counter(k, t.activity_cases_, t.activity_abs_, t.transition_cases_, t.transition_abs_, t.start_cases_,
                  t.end_cases_);
  for (const auto& trace : log.traces()) {
    counter.begin_trace();
    for (const ActivityId& a : trace.events) {
      if (keep && !(*keep)[a]) continue;
      counter.position({&a, 1});
    }
    counter.end_trace();
  }
  t.finish();
  return t;
}

SignificanceTable compute_significance(std::vector<std::string> alphabet, std::span<const LabelSetTrace> traces,
                                       const std::vector<bool>* keep) {
  if (traces.empty()) throw EmptyLogError("cannot compute significance of an empty log");
  SignificanceTable t;
  t.init(std::move(alphabet), traces.size());
  const std::size_t k = t.n();
  Counter counter(k, t.activity_cases_, t.activity_abs_, t.transition_cases_, t.transition_abs_, t.start_cases_,
                  t.end_cases_);
  std::vector<ActivityId> filtered;
  for (const auto& trace : traces) {
    counter.begin_trace();
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const auto pos = trace.at(i);
      if (!keep) {
        counter.position(pos);
        continue;
      }
      filtered.clear();
      for (ActivityId a : pos)
        if ((*keep)[a]) filtered.push_back(a);
      counter.position(filtered);
    }
    counter.end_trace();
  }
  t.finish();
  return t;
}

std::vector<ConflictPair> conflict_pairs(const SignificanceTable& table) {
  std::vector<ConflictPair> out;
  for (const auto& tr : table.transitions()) {
    if (tr.from >= tr.to) continue;
    const auto back = table.transition_cases(tr.to, tr.from);
    if (back == 0) continue;
    out.push_back({tr.from, tr.to, table.fraction(tr.cases), table.fraction(back)});
  }
  return out;
}

}  // namespace flowmap
