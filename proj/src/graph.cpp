#include "routesort/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace routesort {

Graph::Graph(int n) : adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw GraphError("negative vertex count");
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::star(int n) {
  Graph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(0, i);
  return g;
}

Graph Graph::hypercube(int dim) {
  const int n = 1 << dim;
  Graph g(n);
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dim; ++b) {
      const int w = v ^ (1 << b);
      if (v < w) g.add_edge(v, w);
    }
  return g;
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= order()) throw GraphError("vertex out of range: " + std::to_string(v));
}

void Graph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw GraphError("self-loop on vertex " + std::to_string(u));
  const Edge e = Edge::make(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) throw GraphError("duplicate edge");
  edges_.insert(it, e);
  auto& au = adj_[u];
  au.insert(std::lower_bound(au.begin(), au.end(), v), v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= order() || v >= order()) return false;
  const auto& au = adj_[u];
  return std::binary_search(au.begin(), au.end(), v);
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

std::vector<int> Graph::distances_from(Vertex source) const {
  std::vector<int> dist(adj_.size(), -1);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (Vertex w : adj_[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

std::vector<std::vector<int>> Graph::all_distances() const {
  std::vector<std::vector<int>> d;
  d.reserve(adj_.size());
  for (int v = 0; v < order(); ++v) d.push_back(distances_from(v));
  return d;
}

bool Graph::connected() const {
  if (order() <= 1) return true;
  const auto d = distances_from(0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

bool Graph::is_tree() const { return order() >= 1 && size() == order() - 1 && connected(); }

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<int> index(adj_.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  Graph h(static_cast<int>(keep.size()));
  for (const Edge& e : edges_)
    if (index[e.u] >= 0 && index[e.v] >= 0) h.add_edge(index[e.u], index[e.v]);
  return h;
}

Permutation::Permutation(std::vector<Vertex> dest) : dest_(std::move(dest)) {
  std::vector<char> seen(dest_.size(), 0);
  for (Vertex d : dest_) {
    if (d < 0 || d >= size() || seen[d]) throw std::invalid_argument("not a permutation");
    seen[d] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Vertex> d(static_cast<std::size_t>(n));
  std::iota(d.begin(), d.end(), 0);
  return Permutation(std::move(d));
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(dest_.size());
  for (int i = 0; i < size(); ++i) inv[dest_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Vertex> d(a.dest_.size());
  for (int i = 0; i < a.size(); ++i) d[i] = a.dest_[b.dest_[i]];
  return Permutation(std::move(d));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (dest_[i] != i) return false;
  return true;
}

CycleDecomposition cycle_decomposition(const Permutation& p) {
  CycleDecomposition cd;
  std::vector<char> seen(static_cast<std::size_t>(p.size()), 0);
  for (Vertex start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    if (p(start) == start) {
      seen[start] = 1;
      cd.fixed.push_back(start);
      continue;
    }
    // Scanning starts in increasing order, so `start` is the cycle minimum.
    std::vector<Vertex> cyc;
    for (Vertex v = start; !seen[v]; v = p(v)) {
      seen[v] = 1;
      cyc.push_back(v);
    }
    cd.cycles.push_back(std::move(cyc));
  }
  return cd;
}

Permutation recompose(const CycleDecomposition& cd, int n) {
  std::vector<Vertex> dest(static_cast<std::size_t>(n), -1);
  for (Vertex f : cd.fixed) dest[f] = f;
  for (const auto& c : cd.cycles)
    for (std::size_t t = 0; t < c.size(); ++t) dest[c[t]] = c[(t + 1) % c.size()];
  return Permutation(std::move(dest));
}

bool is_matching(int n, const Matching& m) {
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const Edge& e : m.pairs) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) return false;
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

void validate_matching(const Graph& g, const Matching& m) {
  if (!is_matching(g.order(), m)) throw GraphError("pairs do not form a matching");
  for (const Edge& e : m.pairs)
    if (!g.has_edge(e.u, e.v))
      throw GraphError("matched pair " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) +
                       " is not an edge");
}

Matching DirectedMatching::underlying() const {
  Matching m;
  for (const Comparator& c : entries) m.pairs.push_back(Edge::make(c.u, c.v));
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

PebbleConfiguration PebbleConfiguration::initial(int n) {
  PebbleConfiguration c;
  c.at.resize(static_cast<std::size_t>(n));
  std::iota(c.at.begin(), c.at.end(), 0);
  return c;
}

void apply_matching_inplace(std::span<int> at, const Matching& m) {
  for (const Edge& e : m.pairs) std::swap(at[e.u], at[e.v]);
}

PebbleConfiguration apply_matching(const Graph& g, PebbleConfiguration c, const Matching& m) {
  validate_matching(g, m);
  apply_matching_inplace(c.at, m);
  return c;
}

namespace {

bool extend_matching(const std::vector<Edge>& edges, std::size_t from, std::vector<char>& used,
                     Matching& cur, const std::function<bool(const Matching&)>& fn) {
  if (!fn(cur)) return false;
  for (std::size_t i = from; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (used[e.u] || used[e.v]) continue;
    used[e.u] = used[e.v] = 1;
    cur.pairs.push_back(e);
    const bool go_on = extend_matching(edges, i + 1, used, cur, fn);
    cur.pairs.pop_back();
    used[e.u] = used[e.v] = 0;
    if (!go_on) return false;
  }
  return true;
}

}  // namespace

void for_each_matching(const Graph& g, const std::function<bool(const Matching&)>& fn) {
  std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
  Matching cur;
  extend_matching(g.edges(), 0, used, cur, fn);
}

std::vector<Matching> all_matchings(const Graph& g) {
  std::vector<Matching> out;
  for_each_matching(g, [&](const Matching& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace routesort
