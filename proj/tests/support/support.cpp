#include "support.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <stdexcept>

namespace testing {

using flowmap::EventLog;
using flowmap::NodeKind;
using flowmap::ProcessModel;

Sequences random_sequences(Rng& rng, const LogShape& shape) {
  const std::size_t k = rng.uniform(1, shape.max_alphabet);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back(std::string(1, static_cast<char>('A' + i)));

  // Weighted successor lists; index k means "stop".
  std::vector<std::vector<double>> weights(k + 1, std::vector<double>(k + 1, 0.0));
  for (std::size_t from = 0; from <= k; ++from)
    for (std::size_t to = 0; to <= k; ++to) {
      if (from == k && to == k) continue;
      if (rng.chance(0.45)) weights[from][to] = rng.chance(0.3) ? 0.05 + rng.real() * 0.2 : 1.0 + rng.real() * 4.0;
    }
  for (std::size_t from = 0; from < k; ++from) weights[from][k] += 0.3 + rng.real();
  if (std::all_of(weights[k].begin(), weights[k].begin() + static_cast<std::ptrdiff_t>(k),
                  [](double w) { return w == 0.0; }))
    weights[k][0] = 1.0;

  const std::size_t cases = rng.uniform(1, shape.max_cases);
  Sequences out;
  for (std::size_t c = 0; c < cases; ++c) {
    std::vector<std::string> trace;
    std::size_t state = k;  // the start row never picks "stop"
    while (trace.size() < shape.max_length) {
      const auto& row = weights[state];
      std::discrete_distribution<std::size_t> pick(row.begin(), row.end());
      const std::size_t next = pick(rng.engine());
      if (next == k) break;
      trace.push_back(labels[next]);
      state = next;
    }
    if (trace.empty()) trace.push_back(labels[0]);
    out.push_back(std::move(trace));
  }
  return out;
}

EventLog random_log(Rng& rng, const LogShape& shape) { return EventLog::from_sequences(random_sequences(rng, shape)); }

Sequences repeat(const std::vector<std::pair<std::string, std::size_t>>& traces) {
  Sequences out;
  for (const auto& [letters, times] : traces)
    for (std::size_t i = 0; i < times; ++i) {
      std::vector<std::string> t;
      for (char c : letters) t.push_back(std::string(1, c));
      out.push_back(std::move(t));
    }
  return out;
}

EventLog log_of(const std::vector<std::pair<std::string, std::size_t>>& traces) {
  return EventLog::from_sequences(repeat(traces));
}

std::map<Body, Counts> brute_cycles(const Sequences& traces) {
  std::map<Body, Counts> out;
  for (const auto& t : traces) {
    std::set<Body> in_case;
    for (std::size_t p = 0; p < t.size(); ++p)
      for (std::size_t q = p + 1; q < t.size(); ++q) {
        if (t[q] != t[p]) continue;
        const Body seg(t.begin() + static_cast<std::ptrdiff_t>(p), t.begin() + static_cast<std::ptrdiff_t>(q));
        const std::set<std::string> distinct(seg.begin(), seg.end());
        if (distinct.size() == seg.size()) {
          ++out[seg].occurrences;
          in_case.insert(seg);
        }
        break;  // only the next occurrence of t[p]
      }
    for (const auto& b : in_case) ++out[b].cases;
  }
  return out;
}

BruteTable brute_table(const Sequences& traces) {
  BruteTable b;
  for (const auto& t : traces) {
    std::set<std::string> acts;
    std::set<std::pair<std::string, std::string>> trans;
    for (std::size_t i = 0; i < t.size(); ++i) {
      ++b.activities[t[i]].occurrences;
      acts.insert(t[i]);
      if (i + 1 < t.size()) {
        ++b.transitions[{t[i], t[i + 1]}].occurrences;
        trans.insert({t[i], t[i + 1]});
      }
    }
    for (const auto& a : acts) ++b.activities[a].cases;
    for (const auto& p : trans) ++b.transitions[p].cases;
    ++b.starts[t.front()];
    ++b.ends[t.back()];
  }
  return b;
}

namespace {

std::string name_of(const ProcessModel& m, flowmap::NodeId id) {
  const auto& n = m.node(id);
  if (n.kind == NodeKind::Start) return "<start>";
  if (n.kind == NodeKind::End) return "<end>";
  return n.label;
}

}  // namespace

std::set<std::pair<std::string, std::string>> label_edges(const ProcessModel& model) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : model.edges()) out.insert({name_of(model, e.from), name_of(model, e.to)});
  return out;
}

std::set<std::string> label_nodes(const ProcessModel& model) {
  std::set<std::string> out;
  for (flowmap::NodeId v = 2; v < model.num_nodes(); ++v) out.insert(model.node(v).label);
  return out;
}

std::vector<std::string> reachability_violations(const ProcessModel& model) {
  const std::size_t n = model.num_nodes();
  std::vector<std::vector<std::size_t>> fwd(n), bwd(n);
  for (const auto& e : model.edges()) {
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
  }
  auto search = [&](std::size_t root, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
    }
    return seen;
  };
  const auto from_start = search(flowmap::kStartNode, fwd);
  const auto to_end = search(flowmap::kEndNode, bwd);
  std::vector<std::string> bad;
  for (std::size_t v = 2; v < n; ++v)
    if (!from_start[v] || !to_end[v]) bad.push_back(model.node(static_cast<flowmap::NodeId>(v)).label);
  return bad;
}

double brute_trace_score(const std::set<std::string>& nodes, const std::set<std::pair<std::string, std::string>>& edges,
                         const std::vector<std::string>& trace, std::size_t unique_activities) {
  std::vector<std::string> s;
  for (const auto& e : trace)
    if (nodes.count(e)) s.push_back(e);
  const double coverage = static_cast<double>(s.size()) / static_cast<double>(trace.size());
  const double skipped = s.size() < trace.size() ? 1.0 : 0.0;
  double forced = 0.0;
  if (!s.empty()) {
    forced += edges.count({"<start>", s.front()}) ? 0.0 : 1.0;
    forced += edges.count({s.back(), "<end>"}) ? 0.0 : 1.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) forced += edges.count({s[i], s[i + 1]}) ? 0.0 : 1.0;
  }
  const double big_n = static_cast<double>(unique_activities);
  const double n = static_cast<double>(nodes.size());
  return std::max(0.0, coverage - (0.5 / big_n) * skipped - (1.0 / big_n) * forced / n);
}

// DOT grammar ------------------------------------------------------------------

namespace {

struct Token {
  enum Kind { Id, Punct, EndOfInput } kind;
  std::string text;
  bool keyword(std::string_view kw) const {
    if (kind != Id || text.size() != kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(text[i])) != kw[i]) return false;
    return true;
  }
};

class DotParser {
 public:
  explicit DotParser(const std::string& text) { tokenize(text); }

  void graph() {
    if (peek().keyword("strict")) ++pos_;
    if (peek().keyword("digraph")) {
      directed_ = true;
    } else if (!peek().keyword("graph")) {
      fail("expected 'graph' or 'digraph'");
    }
    ++pos_;
    if (peek().kind == Token::Id && !is_keyword(peek())) ++pos_;
    expect("{");
    stmt_list();
    expect("}");
    if (peek().kind != Token::EndOfInput) fail("trailing input after graph");
  }

 private:
  static bool is_keyword(const Token& t) {
    for (auto kw : {"node", "edge", "graph", "digraph", "subgraph", "strict"})
      if (t.keyword(kw)) return true;
    return false;
  }

  void tokenize(const std::string& s) {
    std::size_t i = 0;
    auto is_id_char = [](unsigned char c, bool first) {
      return std::isalpha(c) || c == '_' || c >= 0x80 || (!first && std::isdigit(c));
    };
    while (i < s.size()) {
      const unsigned char c = static_cast<unsigned char>(s[i]);
      if (std::isspace(c)) {
        ++i;
      } else if (s.compare(i, 2, "//") == 0 || (c == '#' && (i == 0 || s[i - 1] == '\n'))) {
        while (i < s.size() && s[i] != '\n') ++i;
      } else if (s.compare(i, 2, "/*") == 0) {
        const auto end = s.find("*/", i + 2);
        if (end == std::string::npos) throw std::runtime_error("unterminated comment");
        i = end + 2;
      } else if (c == '"') {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '"') j += (s[j] == '\\') ? 2 : 1;
        if (j >= s.size()) throw std::runtime_error("unterminated string");
        tokens_.push_back({Token::Id, s.substr(i, j + 1 - i)});
        i = j + 1;
      } else if (c == '<') {
        int depth = 0;
        std::size_t j = i;
        do {
          if (j >= s.size()) throw std::runtime_error("unterminated HTML string");
          if (s[j] == '<') ++depth;
          if (s[j] == '>') --depth;
          ++j;
        } while (depth > 0);
        tokens_.push_back({Token::Id, s.substr(i, j - i)});
        i = j;
      } else if (s.compare(i, 2, "->") == 0 || s.compare(i, 2, "--") == 0) {
        tokens_.push_back({Token::Punct, s.substr(i, 2)});
        i += 2;
      } else if (std::isdigit(c) || c == '.' || c == '-') {
        std::size_t j = i + (c == '-' ? 1 : 0);
        bool digits = false, dot = false;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || (s[j] == '.' && !dot))) {
          if (s[j] == '.') dot = true; else digits = true;
          ++j;
        }
        if (!digits) throw std::runtime_error("malformed numeral at offset " + std::to_string(i));
        tokens_.push_back({Token::Id, s.substr(i, j - i)});
        i = j;
      } else if (is_id_char(c, true)) {
        std::size_t j = i;
        while (j < s.size() && is_id_char(static_cast<unsigned char>(s[j]), false)) ++j;
        tokens_.push_back({Token::Id, s.substr(i, j - i)});
        i = j;
      } else if (std::string_view("{}[];,=:").find(static_cast<char>(c)) != std::string_view::npos) {
        tokens_.push_back({Token::Punct, std::string(1, static_cast<char>(c))});
        ++i;
      } else {
        throw std::runtime_error("unexpected character at offset " + std::to_string(i));
      }
    }
    tokens_.push_back({Token::EndOfInput, ""});
  }

  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  bool at(std::string_view p) const { return peek().kind == Token::Punct && peek().text == p; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error(what + " near token " + std::to_string(pos_) + " '" + peek().text + "'");
  }
  void expect(std::string_view p) {
    if (!at(p)) fail("expected '" + std::string(p) + "'");
    ++pos_;
  }
  void id() {
    if (peek().kind != Token::Id || is_keyword(peek())) fail("expected identifier");
    ++pos_;
  }

  void stmt_list() {
    while (!at("}") && peek().kind != Token::EndOfInput) {
      stmt();
      if (at(";")) ++pos_;
    }
  }

  void stmt() {
    if (peek().keyword("graph") || peek().keyword("node") || peek().keyword("edge")) {
      ++pos_;
      attr_list(true);
      return;
    }
    if (peek().kind == Token::Id && !is_keyword(peek()) && peek(1).kind == Token::Punct && peek(1).text == "=") {
      pos_ += 2;
      id();
      return;
    }
    operand();
    if (at("->") || at("--")) {
      while (at("->") || at("--")) {
        if ((peek().text == "->") != directed_) fail("edge operator does not match graph type");
        ++pos_;
        operand();
      }
    }
    if (at("[")) attr_list(true);
  }

  void operand() {
    if (peek().keyword("subgraph") || at("{")) {
      if (peek().keyword("subgraph")) {
        ++pos_;
        if (peek().kind == Token::Id && !is_keyword(peek())) ++pos_;
      }
      expect("{");
      stmt_list();
      expect("}");
      return;
    }
    id();
    if (at(":")) {
      ++pos_;
      id();
      if (at(":")) {
        ++pos_;
        id();
      }
    }
  }

  void attr_list(bool required) {
    if (required && !at("[")) fail("expected '['");
    while (at("[")) {
      ++pos_;
      while (!at("]")) {
        id();
        expect("=");
        id();
        if (at(",") || at(";")) ++pos_;
      }
      expect("]");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool directed_ = false;
};

}  // namespace

std::string dot_syntax_error(const std::string& text) {
  try {
    DotParser(text).graph();
    return {};
  } catch (const std::exception& e) {
    return e.what();
  }
}

}  // namespace testing
