#include "routesort/sortnet.hpp"

#include <algorithm>

namespace routesort {

SortingNetwork make_network(int n, std::vector<DirectedMatching> stages, Permutation order) {
  if (order.size() != n) throw GraphError("sorted order size does not match network");
  SortingNetwork net;
  net.host = Graph(n);
  net.order = std::move(order);
  std::vector<Edge> used;
  for (auto& stage : stages) {
    if (stage.empty()) continue;
    if (!is_matching(n, stage.underlying())) throw GraphError("network stage is not a matching");
    for (const Comparator& c : stage.entries) used.push_back(Edge::make(c.u, c.v));
    net.stages.push_back(std::move(stage));
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (const Edge& e : used) net.host.add_edge(e.u, e.v);
  return net;
}

std::vector<int> run_network(const SortingNetwork& net, std::vector<int> values,
                             std::size_t stage_count) {
  if (static_cast<int>(values.size()) != net.order_size())
    throw std::invalid_argument("input size does not match network");
  stage_count = std::min(stage_count, net.stages.size());
  for (std::size_t s = 0; s < stage_count; ++s) run_stage<int>(values, net.stages[s]);
  return values;
}

bool is_sorted_by(const Permutation& order, std::span<const int> values) {
  std::vector<int> by_rank(values.size());
  for (int v = 0; v < order.size(); ++v) by_rank[order(v)] = values[v];
  return std::is_sorted(by_rank.begin(), by_rank.end());
}

SortingNetwork odd_even_path_network(int n) {
  if (n < 1) throw std::invalid_argument("path network needs at least one vertex");
  std::vector<DirectedMatching> stages(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    for (int i = s % 2; i + 1 < n; i += 2)
      stages[s].entries.push_back(Comparator{i, i + 1, ExchangeMode::kDirected});
  return make_network(n, std::move(stages), Permutation::identity(n));
}

DirectedMatching reversed(const DirectedMatching& stage) {
  DirectedMatching r;
  for (const Comparator& c : stage.entries) r.entries.push_back(Comparator{c.v, c.u, c.mode});
  return r;
}

Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const ProductLayout lay{g1.order(), g2.order()};
  Graph g(lay.order());
  for (Vertex a = 0; a < lay.n1; ++a)
    for (const Edge& e : g2.edges()) g.add_edge(lay.index(a, e.u), lay.index(a, e.v));
  for (const Edge& e : g1.edges())
    for (Vertex b = 0; b < lay.n2; ++b) g.add_edge(lay.index(e.u, b), lay.index(e.v, b));
  return g;
}

namespace {

void append_mapped(DirectedMatching& out, const DirectedMatching& stage, const ProductLayout& lay,
                   Vertex row) {
  for (const Comparator& c : stage.entries)
    out.entries.push_back(Comparator{lay.index(row, c.u), lay.index(row, c.v), c.mode});
}

}  // namespace

ProductNetwork product_network(const SortingNetwork& net1, const SortingNetwork& net2) {
  if (!verify_zero_one(net1) || !verify_zero_one(net2))
    throw std::invalid_argument("product factors must be verified sorting networks");
  ProductNetwork out;
  out.layout = ProductLayout{net1.order_size(), net2.order_size()};
  const ProductLayout& lay = out.layout;

  std::vector<DirectedMatching> stages;
  for (const DirectedMatching& m : net1.stages) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const Comparator& c : m.entries)
      if (c.mode == ExchangeMode::kDirected) pairs.emplace_back(c.u, c.v);
    // Half stage: lower rows ascending, upper rows with comparators reversed.
    for (const DirectedMatching& m2 : net2.stages) {
      DirectedMatching row_stage;
      const DirectedMatching flipped = reversed(m2);
      for (const auto& [lower, upper] : pairs) {
        append_mapped(row_stage, m2, lay, lower);
        append_mapped(row_stage, flipped, lay, upper);
      }
      stages.push_back(std::move(row_stage));
    }
    DirectedMatching column_stage;
    for (const Comparator& c : m.entries)
      for (Vertex b = 0; b < lay.n2; ++b)
        column_stage.entries.push_back(Comparator{lay.index(c.u, b), lay.index(c.v, b), c.mode});
    stages.push_back(std::move(column_stage));
    out.merged_rows.push_back(std::move(pairs));
    out.full_stage_ends.push_back(0);  // filled after empty stages are dropped
  }
  for (const DirectedMatching& m2 : net2.stages) {
    DirectedMatching row_stage;
    for (Vertex a = 0; a < lay.n1; ++a) append_mapped(row_stage, m2, lay, a);
    stages.push_back(std::move(row_stage));
  }

  // Full stage boundaries, counting only the non-empty stages that survive.
  std::size_t kept = 0;
  std::size_t cursor = 0;
  for (std::size_t f = 0; f < net1.stages.size(); ++f) {
    for (std::size_t s = 0; s <= net2.stages.size(); ++s, ++cursor)
      if (!stages[cursor].empty()) ++kept;
    out.full_stage_ends[f] = kept;
  }

  std::vector<Vertex> rank(static_cast<std::size_t>(lay.order()));
  for (Vertex a = 0; a < lay.n1; ++a)
    for (Vertex b = 0; b < lay.n2; ++b) rank[lay.index(a, b)] = net1.order(a) * lay.n2 + net2.order(b);
  out.net = make_network(lay.order(), std::move(stages), Permutation(std::move(rank)));
  return out;
}

Permutation fixup_permutation(const SortingNetwork& net, const Permutation& target) {
  if (target.size() != net.order_size()) throw std::invalid_argument("target order size mismatch");
  return target.inverse() * net.order;
}

SortingNetwork adapt_sorted_order(const SortingNetwork& net, const Permutation& target,
                                  const RoutingPlan& fixup) {
  const Permutation needed = fixup_permutation(net, target);
  bool routes = false;
  try {
    routes = verify_plan(net.host, needed, fixup);
  } catch (const GraphError&) {
    routes = false;
  }
  if (!routes) throw std::invalid_argument("fixup plan does not route the order change on the host");
  std::vector<DirectedMatching> stages = net.stages;
  for (const Matching& m : fixup.steps) {
    DirectedMatching s;
    for (const Edge& e : m.pairs) s.entries.push_back(Comparator{e.u, e.v, ExchangeMode::kUndirected});
    stages.push_back(std::move(s));
  }
  return make_network(net.order_size(), std::move(stages), target);
}

}  // namespace routesort
