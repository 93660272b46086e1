#include "flowmap/error.hpp"
#include "flowmap/metastates.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace flowmap {

namespace {

constexpr std::string_view kMiddleDot = "\xC2\xB7";

struct CycleStats {
  std::uint64_t occurrences = 0;
  std::uint64_t cases = 0;
  std::size_t last_case = static_cast<std::size_t>(-1);
};

}  // namespace

std::vector<Cycle> cycles_search(const EventLog& log) {
  std::map<std::vector<ActivityId>, CycleStats> found;
  const std::size_t k = log.num_unique_activities();
  std::vector<std::size_t> last_seen(k, static_cast<std::size_t>(-1));
  std::vector<std::size_t> in_segment(k, static_cast<std::size_t>(-1));
  std::vector<std::size_t> next;
  std::vector<ActivityId> body;
  std::size_t segment_id = 0;

  for (std::size_t c = 0; c < log.num_traces(); ++c) {
    const auto& t = log.traces()[c].events;
    // Next occurrence of the same activity, or t.size().
    next.assign(t.size(), t.size());
    for (std::size_t i = t.size(); i-- > 0;) {
      const ActivityId a = t[i];
      if (last_seen[a] != static_cast<std::size_t>(-1)) next[i] = last_seen[a];
      last_seen[a] = i;
    }
    for (ActivityId a : t) last_seen[a] = static_cast<std::size_t>(-1);

    for (std::size_t p = 0; p < t.size(); ++p) {
      const std::size_t q = next[p];
      if (q == t.size()) continue;
      ++segment_id;
      bool simple = true;
      for (std::size_t i = p; i < q; ++i) {
        if (in_segment[t[i]] == segment_id) {
          simple = false;
          break;
        }
        in_segment[t[i]] = segment_id;
      }
      if (!simple) continue;
      body.assign(t.begin() + static_cast<std::ptrdiff_t>(p), t.begin() + static_cast<std::ptrdiff_t>(q));
      auto& stats = found[body];
      ++stats.occurrences;
      if (stats.last_case != c) {
        stats.last_case = c;
        ++stats.cases;
      }
    }
  }

  std::vector<Cycle> out;
  out.reserve(found.size());
  const double traces = static_cast<double>(log.num_traces());
  for (const auto& [ids, stats] : found) {
    Cycle cycle;
    cycle.body.reserve(ids.size());
    for (ActivityId a : ids) cycle.body.push_back(log.label(a));
    cycle.occurrences = stats.occurrences;
    cycle.cases = stats.cases;
    cycle.significance = static_cast<double>(stats.cases) / traces;
    out.push_back(std::move(cycle));
  }
  return out;
}

std::string token_label(std::span<const std::string> body) {
  std::string out = "[";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i > 0) out += kMiddleDot;
    out += body[i];
  }
  out += "]";
  return out;
}

std::string compact_body(std::span<const std::string> body) {
  const bool single_chars = std::all_of(body.begin(), body.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i > 0 && !single_chars) out += kMiddleDot;
    out += body[i];
  }
  return out;
}

std::vector<MetaState> find_states(std::span<const Cycle> cycles, std::size_t num_traces, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidArgument("meta-state threshold must lie in (0, 1]");
  if (num_traces == 0) throw EmptyLogError("meta-states need a non-empty log");
  std::vector<MetaState> out;
  for (const auto& c : cycles) {
    if (c.body.size() <= 1) continue;
    const double sig = static_cast<double>(c.cases) / static_cast<double>(num_traces);
    if (sig < threshold) continue;
    MetaState s{c, token_label(c.body)};
    s.cycle.significance = sig;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const MetaState& a, const MetaState& b) { return a.body() < b.body(); });
  return out;
}

std::vector<MetaState> states_in_model(const ProcessModel& model, std::span<const MetaState> candidates) {
  std::vector<MetaState> out;
  std::vector<NodeId> ids;
  for (const auto& s : candidates) {
    ids.clear();
    bool present = true;
    for (const auto& label : s.body()) {
      const auto id = model.find(label);
      if (!id || model.node(*id).kind != NodeKind::Activity) {
        present = false;
        break;
      }
      ids.push_back(*id);
    }
    for (std::size_t i = 0; present && i < ids.size(); ++i)
      present = model.has_edge(ids[i], ids[(i + 1) % ids.size()]);
    if (present) out.push_back(s);
  }
  return out;
}

RebuiltLog rebuild_log_detailed(const EventLog& log, std::span<const MetaState> states) {
  // Priority: longer body, higher significance, smaller body.
  std::vector<std::size_t> order(states.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = states[a];
    const auto& sb = states[b];
    if (sa.body().size() != sb.body().size()) return sa.body().size() > sb.body().size();
    if (sa.cycle.significance != sb.cycle.significance) return sa.cycle.significance > sb.cycle.significance;
    return sa.body() < sb.body();
  });

  // Bodies in log ids; states mentioning unknown labels never match.
  std::vector<std::vector<ActivityId>> bodies(states.size());
  std::vector<bool> usable(states.size(), true);
  for (std::size_t s = 0; s < states.size(); ++s)
    for (const auto& label : states[s].body()) {
      const auto id = log.find(label);
      if (!id) {
        usable[s] = false;
        break;
      }
      bodies[s].push_back(*id);
    }

  RebuiltLog out;
  std::vector<std::pair<std::string, std::vector<std::string>>> traces;
  traces.reserve(log.num_traces());
  out.spans.reserve(log.num_traces());
  for (const auto& trace : log.traces()) {
    const auto& t = trace.events;
    std::vector<std::string> events;
    std::vector<CollapsedSpan> spans;
    std::size_t i = 0;
    while (i < t.size()) {
      bool collapsed = false;
      for (std::size_t s : order) {
        if (!usable[s]) continue;
        const auto& b = bodies[s];
        const std::size_t k = b.size();
        auto repeat_at = [&](std::size_t pos) {
          return pos + k <= t.size() && std::equal(b.begin(), b.end(), t.begin() + static_cast<std::ptrdiff_t>(pos));
        };
        std::size_t j = 0;
        while (repeat_at(i + j * k)) ++j;
        // Largest j whose run is followed by the closing anchor. A shorter
        // run always closes because the next repetition starts with b1.
        if (j > 0 && !(i + j * k < t.size() && t[i + j * k] == b.front())) --j;
        if (j == 0) continue;
        const std::size_t length = j * k + 1;
        events.push_back(states[s].token);
        spans.push_back({i, length, static_cast<int>(s)});
        i += length;
        collapsed = true;
        break;
      }
      if (!collapsed) {
        events.push_back(log.label(t[i]));
        spans.push_back({i, 1, -1});
        ++i;
      }
    }
    traces.emplace_back(trace.case_id, std::move(events));
    out.spans.push_back(std::move(spans));
  }
  out.log = EventLog::from_traces(traces);
  return out;
}

EventLog rebuild_log(const EventLog& log, std::span<const MetaState> states) {
  return rebuild_log_detailed(log, states).log;
}

}  // namespace flowmap
