#include "routesort/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace routesort {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformed: return "malformed";
    case ParseErrorKind::kOutOfRange: return "out-of-range";
    case ParseErrorKind::kDuplicateEdge: return "duplicate-edge";
    case ParseErrorKind::kSelfLoop: return "self-loop";
    case ParseErrorKind::kOversizeClause: return "oversize-clause";
    case ParseErrorKind::kZeroVariable: return "zero-variable";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) + ": " + message),
      kind_(kind),
      line_(line) {}

namespace {

class Lines {
 public:
  explicit Lines(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.push_back(line);
      start = end + 1;
    }
    // A trailing newline does not start a new line.
    while (!lines_.empty() && blank(lines_.back())) lines_.pop_back();
  }

  bool done() const { return next_ >= lines_.size(); }
  int number() const { return static_cast<int>(next_); }  // 1-based index of the last line taken

  struct Numbered {
    std::string_view text;
    int number;
  };

  Numbered take_numbered(const char* what) {
    const std::string_view line = take(what);
    return {line, number()};
  }

  std::string_view take(const char* what) {
    if (done()) throw ParseError(ParseErrorKind::kMalformed, number() + 1, std::string("missing ") + what);
    return lines_[next_++];
  }

  void expect_end() const {
    if (!done()) throw ParseError(ParseErrorKind::kMalformed, number() + 1, "unexpected trailing content");
  }

  static bool blank(std::string_view s) { return s.find_first_not_of(" \t") == std::string_view::npos; }

 private:
  std::vector<std::string_view> lines_;
  std::size_t next_ = 0;
};

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view tok, int line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(ParseErrorKind::kMalformed, line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

std::vector<long long> ints(std::string_view line, int lineno, std::size_t expected, const char* what) {
  const auto toks = tokens(line);
  if (toks.size() != expected)
    throw ParseError(ParseErrorKind::kMalformed, lineno,
                     std::string(what) + ": expected " + std::to_string(expected) + " fields");
  std::vector<long long> out;
  for (auto t : toks) out.push_back(to_int(t, lineno));
  return out;
}

std::vector<long long> ints(Lines::Numbered line, std::size_t expected, const char* what) {
  return ints(line.text, line.number, expected, what);
}

void check_count(long long n, int line, const char* what) {
  if (n < 0 || n > (1 << 24)) throw ParseError(ParseErrorKind::kMalformed, line, std::string("bad ") + what);
}

Vertex to_vertex(long long v, long long n, int line) {
  if (v < 1 || v > n)
    throw ParseError(ParseErrorKind::kOutOfRange, line, "vertex " + std::to_string(v) + " not in 1.." + std::to_string(n));
  return static_cast<Vertex>(v - 1);
}

// "u-v" or "u>v".
Comparator parse_pair(std::string_view tok, int line, bool allow_directed) {
  std::size_t sep = tok.find_first_of("->", 1);
  if (sep == std::string_view::npos || (!allow_directed && tok[sep] == '>'))
    throw ParseError(ParseErrorKind::kMalformed, line, "bad pair '" + std::string(tok) + "'");
  const long long u = to_int(tok.substr(0, sep), line);
  const long long v = to_int(tok.substr(sep + 1), line);
  if (u < 1 || v < 1) throw ParseError(ParseErrorKind::kOutOfRange, line, "vertices are 1-based");
  if (u == v) throw ParseError(ParseErrorKind::kSelfLoop, line, "pair joins a vertex to itself");
  return Comparator{static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1),
                    tok[sep] == '>' ? ExchangeMode::kDirected : ExchangeMode::kUndirected};
}

}  // namespace

Graph parse_graph(std::string_view text) {
  Lines lines(text);
  const auto header = ints(lines.take_numbered("header"), 2, "graph header");
  check_count(header[0], 1, "vertex count");
  check_count(header[1], 1, "edge count");
  Graph g(static_cast<int>(header[0]));
  for (long long e = 0; e < header[1]; ++e) {
    const auto uv = ints(lines.take_numbered("edge line"), 2, "edge");
    const Vertex u = to_vertex(uv[0], header[0], lines.number());
    const Vertex v = to_vertex(uv[1], header[0], lines.number());
    if (u == v) throw ParseError(ParseErrorKind::kSelfLoop, lines.number(), "self-loop at " + std::to_string(u + 1));
    if (g.has_edge(u, v))
      throw ParseError(ParseErrorKind::kDuplicateEdge, lines.number(),
                       "duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    g.add_edge(u, v);
  }
  lines.expect_end();
  return g;
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
  return out.str();
}

Permutation parse_permutation(std::string_view text) {
  Lines lines(text);
  const long long n = ints(lines.take_numbered("header"), 1, "permutation header")[0];
  check_count(n, 1, "permutation size");
  std::vector<Vertex> dest;
  if (n > 0) {
    for (long long d : ints(lines.take_numbered("destination line"), static_cast<std::size_t>(n), "destinations"))
      dest.push_back(to_vertex(d, n, lines.number()));
  }
  lines.expect_end();
  try {
    return Permutation(std::move(dest));
  } catch (const std::invalid_argument& e) {
    throw ParseError(ParseErrorKind::kMalformed, 2, e.what());
  }
}

std::string format_permutation(const Permutation& p) {
  std::ostringstream out;
  out << p.size() << '\n';
  for (int i = 0; i < p.size(); ++i) out << (i ? " " : "") << p(i) + 1;
  out << '\n';
  return out.str();
}

RoutingPlan parse_plan(std::string_view text) {
  Lines lines(text);
  const auto head = tokens(lines.take("header"));
  if (head.size() != 2 || head[0] != "steps")
    throw ParseError(ParseErrorKind::kMalformed, 1, "expected 'steps t'");
  const long long t = to_int(head[1], 1);
  check_count(t, 1, "step count");
  RoutingPlan plan;
  for (long long s = 0; s < t; ++s) {
    // Blank lines at the end were trimmed; missing lines are empty steps.
    const std::string_view line = lines.done() ? std::string_view{} : lines.take("step");
    const int lineno = static_cast<int>(s) + 2;
    Matching m;
    std::set<Vertex> used;
    for (auto tok : tokens(line)) {
      const Comparator c = parse_pair(tok, lineno, false);
      if (!used.insert(c.u).second || !used.insert(c.v).second)
        throw ParseError(ParseErrorKind::kMalformed, lineno, "vertex repeated within a step");
      m.pairs.push_back(Edge::make(c.u, c.v));
    }
    std::sort(m.pairs.begin(), m.pairs.end());
    plan.steps.push_back(std::move(m));
  }
  lines.expect_end();
  return plan;
}

std::string format_plan(const RoutingPlan& plan) {
  std::ostringstream out;
  out << "steps " << plan.steps.size() << '\n';
  for (const Matching& m : plan.steps) {
    bool first = true;
    for (const Edge& e : m.pairs) {
      out << (first ? "" : " ") << e.u + 1 << '-' << e.v + 1;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

SortingNetwork parse_network(std::string_view text) {
  Lines lines(text);
  const auto header = ints(lines.take_numbered("header"), 2, "network header");
  check_count(header[0], 1, "vertex count");
  check_count(header[1], 1, "depth");
  const long long n = header[0];
  std::vector<Vertex> rank;
  if (n > 0)
    for (long long r : ints(lines.take_numbered("sorted order"), static_cast<std::size_t>(n), "sorted order"))
      rank.push_back(to_vertex(r, n, lines.number()));
  Permutation order;
  try {
    order = Permutation(std::move(rank));
  } catch (const std::invalid_argument& e) {
    throw ParseError(ParseErrorKind::kMalformed, 2, std::string("sorted order: ") + e.what());
  }
  std::vector<DirectedMatching> stages;
  for (long long s = 0; s < header[1]; ++s) {
    const std::string_view line = lines.take("stage");
    DirectedMatching stage;
    std::set<Vertex> used;
    for (auto tok : tokens(line)) {
      Comparator c = parse_pair(tok, lines.number(), true);
      if (c.u >= n || c.v >= n) throw ParseError(ParseErrorKind::kOutOfRange, lines.number(), "vertex out of range");
      if (!used.insert(c.u).second || !used.insert(c.v).second)
        throw ParseError(ParseErrorKind::kMalformed, lines.number(), "vertex repeated within a stage");
      stage.entries.push_back(c);
    }
    if (stage.empty()) throw ParseError(ParseErrorKind::kMalformed, lines.number(), "empty stage");
    stages.push_back(std::move(stage));
  }
  lines.expect_end();
  return make_network(static_cast<int>(n), std::move(stages), std::move(order));
}

std::string format_network(const SortingNetwork& net) {
  std::ostringstream out;
  out << net.order_size() << ' ' << net.depth() << '\n';
  for (int v = 0; v < net.order_size(); ++v) out << (v ? " " : "") << net.order(v) + 1;
  out << '\n';
  for (const DirectedMatching& stage : net.stages) {
    bool first = true;
    for (const Comparator& c : stage.entries) {
      out << (first ? "" : " ") << c.u + 1 << (c.mode == ExchangeMode::kDirected ? '>' : '-') << c.v + 1;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace routesort
