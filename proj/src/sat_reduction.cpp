#include "routesort/sat_reduction.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "routesort/io.hpp"

namespace routesort {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view tok, int line) {
  std::size_t pos = 0;
  const std::string s(tok);
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw ParseError(ParseErrorKind::kMalformed, line, "expected an integer, got '" + s + "'");
  return v;
}

}  // namespace

Formula parse_cnf(std::string_view text) {
  Formula f;
  bool have_header = false;
  long long declared = 0;
  std::vector<int> current;
  int lineno = 0;
  int last_line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    const auto toks = split_tokens(line);
    if (toks.empty() || toks[0] == "c" || toks[0][0] == 'c') continue;
    if (toks[0] == "%") break;  // SATLIB trailer
    if (toks[0] == "p") {
      if (have_header || toks.size() != 4 || toks[1] != "cnf")
        throw ParseError(ParseErrorKind::kMalformed, lineno, "expected 'p cnf <variables> <clauses>'");
      const long long n = parse_int(toks[2], lineno);
      declared = parse_int(toks[3], lineno);
      if (n < 0 || declared < 0 || n > (1 << 20))
        throw ParseError(ParseErrorKind::kMalformed, lineno, "negative or oversized header count");
      if (n == 0 && declared > 0)
        throw ParseError(ParseErrorKind::kZeroVariable, lineno, "clauses declared over zero variables");
      f.variable_count = static_cast<int>(n);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(ParseErrorKind::kMalformed, lineno, "clause before header");
    for (auto tok : toks) {
      const long long lit = parse_int(tok, lineno);
      last_line = lineno;
      if (lit == 0) {
        if (current.empty()) throw ParseError(ParseErrorKind::kMalformed, lineno, "empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::llabs(lit) > f.variable_count)
        throw ParseError(ParseErrorKind::kOutOfRange, lineno, "literal " + std::to_string(lit) + " exceeds variable count");
      current.push_back(static_cast<int>(lit));
      if (current.size() > 3)
        throw ParseError(ParseErrorKind::kOversizeClause, lineno, "clause has more than three literals");
    }
  }
  if (!have_header) throw ParseError(ParseErrorKind::kMalformed, 1, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(ParseErrorKind::kMalformed, last_line, "clause not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared)
    throw ParseError(ParseErrorKind::kMalformed, lineno,
                     "header declares " + std::to_string(declared) + " clauses, found " + std::to_string(f.clauses.size()));
  return f;
}

std::string format_cnf(const Formula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

bool brute_force_satisfiable(const Formula& f) {
  if (f.variable_count > 24) throw std::invalid_argument("brute force is limited to 24 variables");
  for (std::uint32_t a = 0; a < (1u << f.variable_count); ++a) {
    bool all = true;
    for (const auto& c : f.clauses) {
      bool any = false;
      for (int lit : c) {
        const bool value = (a >> (std::abs(lit) - 1)) & 1;
        if (value == (lit > 0)) any = true;
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Vertex GadgetInstance::port(const std::string& name) const {
  const auto it = ports.find(name);
  if (it == ports.end()) throw std::out_of_range("gadget has no port " + name);
  return it->second;
}

Permutation GadgetInstance::permutation() const {
  std::vector<Vertex> dest(static_cast<std::size_t>(order()));
  for (int v = 0; v < order(); ++v) dest[v] = v;
  for (const auto& [a, b] : transpositions) std::swap(dest[a], dest[b]);
  return Permutation(std::move(dest));
}

namespace {

class FragmentBuilder {
 public:
  Vertex add(const std::string& name) {
    const Vertex v = count_++;
    names_[name] = v;
    return v;
  }
  void alias(const std::string& name, Vertex v) { names_[name] = v; }
  Vertex operator[](const std::string& name) const { return names_.at(name); }
  void edge(Vertex a, Vertex b) { edges_.push_back(Edge::make(a, b)); }

  GadgetInstance finish(std::vector<std::pair<Vertex, Vertex>> transpositions) {
    GadgetInstance g;
    g.graph = Graph::from_edges(count_, edges_);
    g.transpositions = std::move(transpositions);
    g.ports = std::move(names_);
    return g;
  }

 private:
  int count_ = 0;
  std::map<std::string, Vertex> names_;
  std::vector<Edge> edges_;
};

std::string idx(const char* prefix, int i) { return prefix + std::to_string(i); }

}  // namespace

GadgetInstance build_clause_gadget(const std::vector<int>& clause) {
  if (clause.empty()) throw std::invalid_argument("clause gadget needs at least one literal");
  FragmentBuilder fb;
  const Vertex a = fb.add("a");
  const Vertex b = fb.add("b");
  for (std::size_t i = 1; i <= clause.size(); ++i) {
    const Vertex p = fb.add(idx("p", static_cast<int>(i)));
    const Vertex q = fb.add(idx("q", static_cast<int>(i)));
    fb.edge(a, p);
    fb.edge(p, q);
    fb.edge(q, b);
  }
  return fb.finish({{a, b}});
}

int variable_levels(int occurrences) {
  if (occurrences < 1) throw std::invalid_argument("variable gadget needs at least one occurrence");
  int l = 1;
  while (occurrences > (1 << (l + 1)) - 2) ++l;
  return l;
}

GadgetInstance build_variable_gadget(int occurrences) {
  const int l = variable_levels(occurrences);
  const int hexagons = (1 << (l + 1)) - 1;
  FragmentBuilder fb;
  // shared[i] is L1 of hexagon i and R1 of hexagon i+1.
  std::vector<Vertex> shared;
  for (int i = 0; i < hexagons; ++i) shared.push_back(fb.add(idx("L1_", i)));
  std::vector<std::pair<Vertex, Vertex>> swaps;
  for (int i = 0; i < hexagons; ++i) {
    const Vertex a = fb.add(idx("a", i));
    const Vertex r2 = fb.add(idx("R2_", i));
    const Vertex b = fb.add(idx("b", i));
    const Vertex l2 = fb.add(idx("L2_", i));
    const Vertex r1 = shared[(i + hexagons - 1) % hexagons];
    const Vertex l1 = shared[i];
    fb.alias(idx("R1_", i), r1);
    fb.edge(a, r1);
    fb.edge(r1, r2);
    fb.edge(r2, b);
    fb.edge(b, l2);
    fb.edge(l2, l1);
    fb.edge(l1, a);
    swaps.emplace_back(a, b);
    if (i > 0) {
      fb.alias(idx("x", i), l2);
      fb.alias(idx("-x", i), r2);
    }
  }
  return fb.finish(std::move(swaps));
}

GadgetInstance build_f_chain(int length) {
  if (length < 1) throw std::invalid_argument("f-chain length must be at least 1");
  FragmentBuilder fb;
  Vertex u = fb.add("u");
  std::vector<std::pair<Vertex, Vertex>> swaps;
  for (int k = 0; k < length; ++k) {
    const Vertex sa = fb.add(idx("sa", k));
    const Vertex sb = fb.add(idx("sb", k));
    const Vertex v = fb.add(k + 1 == length ? std::string("v") : idx("joint", k));
    fb.edge(sa, u);
    fb.edge(u, sb);
    fb.edge(sb, v);
    fb.edge(v, sa);
    swaps.emplace_back(sa, sb);
    u = v;
  }
  return fb.finish(std::move(swaps));
}

namespace {

class Composer {
 public:
  // Copies `g` into the instance; local vertices listed in `fixed` are
  // identified with existing global vertices, the rest are fresh.
  std::vector<Vertex> place(const GadgetInstance& g, const std::map<Vertex, Vertex>& fixed = {}) {
    std::vector<Vertex> to_global(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v) {
      const auto it = fixed.find(v);
      to_global[v] = it != fixed.end() ? it->second : order_++;
    }
    for (const Edge& e : g.graph.edges()) edges_.push_back(Edge::make(to_global[e.u], to_global[e.v]));
    for (const auto& [a, b] : g.transpositions) swaps_.emplace_back(to_global[a], to_global[b]);
    return to_global;
  }

  Vertex fresh() { return order_++; }
  void edge(Vertex a, Vertex b) { edges_.push_back(Edge::make(a, b)); }
  int order() const { return order_; }

  std::pair<Graph, Permutation> finish() const {
    Graph g = Graph::from_edges(order_, edges_);
    std::vector<Vertex> dest(static_cast<std::size_t>(order_));
    for (int v = 0; v < order_; ++v) dest[v] = v;
    for (const auto& [a, b] : swaps_) std::swap(dest[a], dest[b]);
    return {std::move(g), Permutation(std::move(dest))};
  }

 private:
  int order_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::pair<Vertex, Vertex>> swaps_;
};

}  // namespace

ReductionOutput reduce(const Formula& f, int chain_length) {
  std::vector<int> occurrences(static_cast<std::size_t>(f.variable_count) + 1, 0);
  for (const auto& c : f.clauses) {
    if (c.empty()) throw std::invalid_argument("formula has an empty clause");
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > f.variable_count) throw std::invalid_argument("literal out of range");
      ++occurrences[std::abs(lit)];
    }
  }

  Composer comp;
  ReductionOutput out;
  std::vector<GadgetInstance> var_gadget(occurrences.size());
  std::vector<std::vector<Vertex>> var_map(occurrences.size());
  Vertex previous_anchor = -1;
  for (int x = 1; x <= f.variable_count; ++x) {
    if (occurrences[x] == 0) continue;
    var_gadget[x] = build_variable_gadget(occurrences[x]);
    var_map[x] = comp.place(var_gadget[x]);
    out.variable_vertices += var_gadget[x].order();
    const Vertex anchor = var_map[x][var_gadget[x].port("a0")];
    if (previous_anchor >= 0) {
      const Vertex c1 = comp.fresh();
      const Vertex c2 = comp.fresh();
      comp.edge(previous_anchor, c1);
      comp.edge(c1, c2);
      comp.edge(c2, anchor);
      out.connector_vertices += 2;
    }
    previous_anchor = anchor;
  }

  const GadgetInstance chain = build_f_chain(chain_length);
  std::vector<int> used(occurrences.size(), 0);
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const auto& clause = f.clauses[ci];
    const GadgetInstance cg = build_clause_gadget(clause);
    const auto cmap = comp.place(cg);
    out.clause_vertices += cg.order();
    for (std::size_t i = 0; i < clause.size(); ++i) {
      const int lit = clause[i];
      const int x = std::abs(lit);
      const int k = ++used[x];
      const Vertex var_port = var_map[x][var_gadget[x].port(idx(lit > 0 ? "x" : "-x", k))];
      const Vertex clause_port = cmap[cg.port(idx("p", static_cast<int>(i) + 1))];
      comp.place(chain, {{chain.port("u"), clause_port}, {chain.port("v"), var_port}});
      out.chain_vertices += chain.order() - 2;
      out.ports.push_back(PortRecord{lit, static_cast<int>(ci), var_port, clause_port});
    }
  }
  auto [g, p] = comp.finish();
  out.graph = std::move(g);
  out.perm = std::move(p);
  return out;
}

std::string format_port_map(const ReductionOutput& out) {
  std::ostringstream s;
  for (const PortRecord& r : out.ports) s << r.literal << ' ' << r.clause + 1 << ' ' << r.vertex + 1 << '\n';
  return s.str();
}

std::vector<PortRecord> parse_port_map(std::string_view text) {
  std::vector<PortRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long literal = 0, clause = 0, vertex = 0;
    std::string extra;
    if (!(fields >> literal >> clause >> vertex) || (fields >> extra))
      throw ParseError(ParseErrorKind::kMalformed, lineno, "expected 'literal clause vertex'");
    if (literal == 0) throw ParseError(ParseErrorKind::kMalformed, lineno, "literal 0");
    if (clause < 1 || vertex < 1) throw ParseError(ParseErrorKind::kOutOfRange, lineno, "indices are 1-based");
    out.push_back(PortRecord{static_cast<int>(literal), static_cast<int>(clause - 1), static_cast<Vertex>(vertex - 1), -1});
  }
  return out;
}

}  // namespace routesort
