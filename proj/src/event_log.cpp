#include "flowmap/event_log.hpp"

#include "flowmap/error.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace flowmap {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Reads one RFC-4180 style record. Quoted fields may contain the delimiter,
// doubled quotes and line breaks. `line` is advanced past the record.
bool read_record(std::istream& in, char delim, std::vector<std::string>& fields, std::size_t& line) {
  fields.clear();
  int c = in.get();
  if (c == std::char_traits<char>::eof()) return false;

  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (;; c = in.get()) {
    if (c == std::char_traits<char>::eof()) {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      ++line;
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && trim(field).empty()) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (ch == delim) {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else if (ch == '\n') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      ++line;
      return true;
    } else if (!(was_quoted && (ch == ' ' || ch == '\t' || ch == '\r'))) {
      field.push_back(ch);
    }
  }
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw FormatError("missing column '" + name + "'", 1);
  return static_cast<std::size_t>(it - header.begin());
}

void write_field(std::ostream& out, std::string_view field, char delim) {
  const bool needs_quotes = field.find_first_of(std::string{delim, '"', '\n', '\r'}) != std::string_view::npos ||
                            field != trim(field) || field.empty();
  if (!needs_quotes) {
    out << field;
    return;
  }
  out << '"';
  for (char ch : field) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

template <typename T>
bool parse_digits(std::string_view s, std::size_t pos, std::size_t count, T& out) {
  if (pos + count > s.size()) return false;
  for (std::size_t i = pos; i < pos + count; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  const auto res = std::from_chars(s.data() + pos, s.data() + pos + count, out);
  return res.ec == std::errc{};
}

}  // namespace

EventLog EventLog::from_traces(const std::vector<std::pair<std::string, std::vector<std::string>>>& traces) {
  EventLog log;
  for (const auto& [case_id, events] : traces) {
    if (events.empty()) throw InvalidArgument("case '" + case_id + "' has no events");
    log.alphabet_.insert(log.alphabet_.end(), events.begin(), events.end());
  }
  std::sort(log.alphabet_.begin(), log.alphabet_.end());
  log.alphabet_.erase(std::unique(log.alphabet_.begin(), log.alphabet_.end()), log.alphabet_.end());

  std::unordered_map<std::string_view, ActivityId> ids;
  ids.reserve(log.alphabet_.size());
  for (ActivityId i = 0; i < log.alphabet_.size(); ++i) ids.emplace(log.alphabet_[i], i);

  const std::size_t n = log.alphabet_.size();
  std::vector<bool> seen_pair(n * n, false);
  log.traces_.reserve(traces.size());
  for (const auto& [case_id, events] : traces) {
    Trace t{case_id, {}};
    t.events.reserve(events.size());
    for (const auto& e : events) t.events.push_back(ids.at(e));
    for (std::size_t i = 0; i + 1 < t.events.size(); ++i) {
      auto&& bit = seen_pair[t.events[i] * n + t.events[i + 1]];
      if (!bit) {
        bit = true;
        ++log.num_unique_transitions_;
      }
    }
    log.total_events_ += t.events.size();
    log.traces_.push_back(std::move(t));
  }
  return log;
}

EventLog EventLog::from_sequences(const std::vector<std::vector<std::string>>& sequences) {
  std::vector<std::pair<std::string, std::vector<std::string>>> traces;
  traces.reserve(sequences.size());
  for (std::size_t i = 0; i < sequences.size(); ++i) traces.emplace_back(std::to_string(i + 1), sequences[i]);
  return from_traces(traces);
}

std::optional<ActivityId> EventLog::find(std::string_view label) const {
  const auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), label);
  if (it == alphabet_.end() || *it != label) return std::nullopt;
  return static_cast<ActivityId>(it - alphabet_.begin());
}

std::vector<std::string> EventLog::labels_of(const Trace& trace) const {
  std::vector<std::string> out;
  out.reserve(trace.events.size());
  for (ActivityId a : trace.events) out.push_back(alphabet_[a]);
  return out;
}

std::optional<std::int64_t> parse_iso8601(std::string_view s) {
  s = trim(s);
  int y = 0;
  unsigned mo = 0, d = 0;
  if (!parse_digits(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !parse_digits(s, 5, 2, mo) || s[7] != '-' ||
      !parse_digits(s, 8, 2, d))
    return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo}, std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  std::int64_t micros = std::chrono::duration_cast<std::chrono::microseconds>(
                            std::chrono::sys_days{ymd}.time_since_epoch())
                            .count();
  std::size_t pos = 10;
  if (pos == s.size()) return micros;
  if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
  ++pos;

  int hh = 0, mm = 0, ss = 0;
  if (!parse_digits(s, pos, 2, hh) || pos + 2 >= s.size() || s[pos + 2] != ':' || !parse_digits(s, pos + 3, 2, mm))
    return std::nullopt;
  pos += 5;
  std::int64_t frac = 0;
  if (pos < s.size() && s[pos] == ':') {
    if (!parse_digits(s, pos + 1, 2, ss)) return std::nullopt;
    pos += 3;
    if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
      ++pos;
      std::size_t digits = 0;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        if (digits < 6) frac = frac * 10 + (s[pos] - '0');
        ++digits;
        ++pos;
      }
      if (digits == 0) return std::nullopt;
      for (; digits < 6; ++digits) frac *= 10;
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  micros += ((hh * 60LL + mm) * 60LL + ss) * 1'000'000LL + frac;

  if (pos == s.size()) return micros;
  if (s[pos] == 'Z' && pos + 1 == s.size()) return micros;
  if (s[pos] == '+' || s[pos] == '-') {
    int oh = 0, om = 0;
    const std::string_view tz = s.substr(pos + 1);
    const bool ok = (tz.size() == 5 && tz[2] == ':' && parse_digits(tz, 0, 2, oh) && parse_digits(tz, 3, 2, om)) ||
                    (tz.size() == 4 && parse_digits(tz, 0, 2, oh) && parse_digits(tz, 2, 2, om)) ||
                    (tz.size() == 2 && parse_digits(tz, 0, 2, oh));
    if (!ok) return std::nullopt;
    const std::int64_t offset = (oh * 60LL + om) * 60LL * 1'000'000LL;
    return s[pos] == '+' ? micros - offset : micros + offset;
  }
  return std::nullopt;
}

EventLog parse_log(std::istream& source, const ParseOptions& options) {
  std::vector<std::string> fields;
  std::size_t line = 0;

  // Header, skipping leading blank lines.
  do {
    if (!read_record(source, options.delimiter, fields, line)) throw EmptyLogError("event log is empty");
  } while (fields.size() == 1 && fields[0].empty());
  if (!fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
  const std::vector<std::string> header = fields;

  const std::size_t case_col = column_index(header, options.case_column);
  const std::size_t act_col = column_index(header, options.activity_column);
  std::optional<std::size_t> ts_col;
  if (const auto it = std::find(header.begin(), header.end(), options.timestamp_column); it != header.end())
    ts_col = static_cast<std::size_t>(it - header.begin());
  else if (options.require_timestamp)
    throw FormatError("missing column '" + options.timestamp_column + "'", 1);
  const std::size_t needed = std::max({case_col, act_col, ts_col.value_or(0)}) + 1;

  struct Row {
    std::int64_t time;
    std::size_t order;
    std::string activity;
  };
  std::vector<std::string> case_order;
  std::unordered_map<std::string, std::vector<Row>> rows_by_case;

  std::size_t order = 0;
  for (;;) {
    const std::size_t row_line = line + 1;
    if (!read_record(source, options.delimiter, fields, line)) break;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() < needed)
      throw FormatError("expected at least " + std::to_string(needed) + " fields, got " + std::to_string(fields.size()),
                        row_line);
    std::string case_id = fields[case_col];
    std::string activity = fields[act_col];
    if (activity.empty()) throw FormatError("empty activity label", row_line);
    std::int64_t time = 0;
    if (ts_col) {
      const auto parsed = parse_iso8601(fields[*ts_col]);
      if (!parsed) throw FormatError("unparsable timestamp '" + fields[*ts_col] + "'", row_line);
      time = *parsed;
    }
    auto [it, inserted] = rows_by_case.try_emplace(case_id);
    if (inserted) case_order.push_back(case_id);
    it->second.push_back(Row{time, order++, std::move(activity)});
  }
  if (case_order.empty()) throw EmptyLogError("event log has no events");

  std::vector<std::pair<std::string, std::vector<std::string>>> traces;
  traces.reserve(case_order.size());
  for (const auto& id : case_order) {
    auto& rows = rows_by_case[id];
    if (ts_col)
      std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.time < b.time; });
    std::vector<std::string> events;
    events.reserve(rows.size());
    for (auto& r : rows) events.push_back(std::move(r.activity));
    traces.emplace_back(id, std::move(events));
  }
  return EventLog::from_traces(traces);
}

EventLog parse_log_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_log(in, options);
}

void write_log(const EventLog& log, std::ostream& out, const ParseOptions& options) {
  const char d = options.delimiter;
  write_field(out, options.case_column, d);
  out << d;
  write_field(out, options.activity_column, d);
  out << '\n';
  for (const auto& t : log.traces()) {
    for (ActivityId a : t.events) {
      write_field(out, t.case_id, d);
      out << d;
      write_field(out, log.label(a), d);
      out << '\n';
    }
  }
}

}  // namespace flowmap
