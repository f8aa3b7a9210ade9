#include "routesort/generators.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace routesort {

Graph random_tree(int n, Rng& rng) {
  Graph t(n);
  if (n < 2) return t;
  if (n == 2) {
    t.add_edge(0, 1);
    return t;
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> code(static_cast<std::size_t>(n - 2));
  for (int& c : code) c = pick(rng);
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int c : code) ++degree[c];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  for (int c : code) {
    const int leaf = leaves.top();
    leaves.pop();
    t.add_edge(leaf, c);
    if (--degree[c] == 1) leaves.push(c);
  }
  const int a = leaves.top();
  leaves.pop();
  t.add_edge(a, leaves.top());
  return t;
}

Graph random_connected_graph(int n, double extra, Rng& rng) {
  Graph g = random_tree(n, rng);
  std::bernoulli_distribution coin(extra);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v) && coin(rng)) g.add_edge(u, v);
  return g;
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<Vertex> dest(static_cast<std::size_t>(n));
  std::iota(dest.begin(), dest.end(), 0);
  std::shuffle(dest.begin(), dest.end(), rng);
  return Permutation(std::move(dest));
}

void for_each_connected_graph(int n, const std::function<void(const Graph&)>& fn) {
  if (n > 6) throw std::invalid_argument("exhaustive graph enumeration is limited to n <= 6");
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.push_back(Edge{u, v});
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> chosen;
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if ((mask >> e) & 1) chosen.push_back(pairs[e]);
    if (static_cast<int>(chosen.size()) + 1 < n) continue;
    Graph g = Graph::from_edges(n, chosen);
    if (g.connected()) fn(g);
  }
}

}  // namespace routesort
