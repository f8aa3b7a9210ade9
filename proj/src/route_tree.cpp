#include <algorithm>
#include <queue>

#include "routesort/route.hpp"

namespace routesort {

namespace {

class TreeRouter {
 public:
  TreeRouter(const Graph& t, const Permutation& p) : t_(t), dest_(p.dest()) {
    at_.resize(static_cast<std::size_t>(t.order()));
    for (int v = 0; v < t.order(); ++v) at_[v] = v;
    in_part_.assign(static_cast<std::size_t>(t.order()), 0);
    comp_.assign(static_cast<std::size_t>(t.order()), -1);
  }

  RoutingPlan run() {
    std::vector<Vertex> all(static_cast<std::size_t>(t_.order()));
    for (int v = 0; v < t_.order(); ++v) all[v] = v;
    RoutingPlan plan;
    plan.steps = route(all);
    return plan;
  }

 private:
  // Restricts traversal to the current part.
  void mark(const std::vector<Vertex>& part, char on) {
    for (Vertex v : part) in_part_[v] = on;
  }

  Vertex centroid(const std::vector<Vertex>& part) {
    const int n = static_cast<int>(part.size());
    // Iterative DFS from part[0] for subtree sizes.
    std::vector<int> parent(t_.order(), -1), order, size(t_.order(), 1);
    std::vector<Vertex> stack{part[0]};
    parent[part[0]] = part[0];
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (Vertex w : t_.neighbors(v))
        if (in_part_[w] && parent[w] < 0) {
          parent[w] = v;
          stack.push_back(w);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (parent[*it] != *it) size[parent[*it]] += size[*it];
    Vertex best = -1;
    for (Vertex v : order) {
      int worst = n - size[v];
      for (Vertex w : t_.neighbors(v))
        if (in_part_[w] && parent[w] == v) worst = std::max(worst, size[w]);
      if (worst <= n / 2 && (best < 0 || v < best)) best = v;
    }
    return best;
  }

  std::vector<Matching> route(const std::vector<Vertex>& part) {
    if (part.size() <= 1) return {};
    mark(part, 1);
    const Vertex c = centroid(part);

    // Component of every vertex of part - c, numbered by the neighbor of c
    // it hangs from. Pebbles whose destination is c have class -1.
    std::vector<Vertex> roots;
    std::vector<Vertex> bfs;
    for (Vertex w : t_.neighbors(c))
      if (in_part_[w]) roots.push_back(w);
    const int d = static_cast<int>(roots.size());
    for (Vertex v : part) comp_of(v) = -1;
    std::vector<std::vector<Vertex>> comps(static_cast<std::size_t>(d));
    std::vector<Vertex> parent_of(t_.order(), -1);
    {
      std::queue<Vertex> q;
      for (int i = 0; i < d; ++i) {
        comp_of(roots[i]) = i;
        parent_of[roots[i]] = c;
        q.push(roots[i]);
      }
      while (!q.empty()) {
        const Vertex v = q.front();
        q.pop();
        bfs.push_back(v);
        comps[comp_of(v)].push_back(v);
        for (Vertex w : t_.neighbors(v))
          if (in_part_[w] && w != c && comp_of(w) < 0) {
            comp_of(w) = comp_of(v);
            parent_of[w] = v;
            q.push(w);
          }
      }
    }
    comp_of(c) = -1;
    auto cls = [&](Vertex v) { return comp_of(dest_[at_[v]]); };
    auto settled = [&](Vertex v) { return cls(v) == comp_of(v); };

    std::vector<Matching> steps;
    const std::size_t guard = 8 * part.size() + 16;
    std::vector<char> busy(t_.order(), 0);
    while (true) {
      bool done = settled(c);
      for (Vertex v : bfs) done = done && settled(v);
      if (done) break;
      if (steps.size() > guard) throw std::logic_error("tree routing failed to converge");

      Matching m;
      for (Vertex v : part) busy[v] = 0;
      const int k = cls(c);
      if (k >= 0) {
        if (!settled(roots[k])) m.pairs.push_back(Edge::make(c, roots[k]));
      } else {
        for (int i = 0; i < d; ++i)
          if (!settled(roots[i])) {
            m.pairs.push_back(Edge::make(c, roots[i]));
            break;
          }
      }
      for (const Edge& e : m.pairs) busy[e.u] = busy[e.v] = 1;
      // Top-down: a settled parent pulls up an unsettled child.
      for (Vertex v : bfs) {
        if (busy[v] || !settled(v)) continue;
        for (Vertex w : t_.neighbors(v))
          if (in_part_[w] && parent_of[w] == v && !busy[w] && !settled(w)) {
            m.pairs.push_back(Edge::make(v, w));
            busy[v] = busy[w] = 1;
            break;
          }
      }
      if (m.empty()) throw std::logic_error("tree routing stalled");
      std::sort(m.pairs.begin(), m.pairs.end());
      apply_matching_inplace(at_, m);
      steps.push_back(std::move(m));
    }
    mark(part, 0);

    // Components are disjoint, so their schedules overlay step by step after
    // the exchange phase.
    const std::size_t base = steps.size();
    for (auto& comp : comps) {
      std::sort(comp.begin(), comp.end());
      auto sub = route(comp);
      if (base + sub.size() > steps.size()) steps.resize(base + sub.size());
      for (std::size_t s = 0; s < sub.size(); ++s) {
        auto& dst = steps[base + s].pairs;
        dst.insert(dst.end(), sub[s].pairs.begin(), sub[s].pairs.end());
        std::sort(dst.begin(), dst.end());
      }
    }
    return steps;
  }

  int& comp_of(Vertex v) { return comp_[v]; }

  const Graph& t_;
  const std::vector<Vertex>& dest_;
  std::vector<int> at_;
  std::vector<char> in_part_;
  std::vector<int> comp_;
};

}  // namespace

RoutingPlan route_tree(const Graph& t, const Permutation& p) {
  if (!t.is_tree()) throw GraphError("route_tree requires a tree");
  if (p.size() != t.order()) throw GraphError("permutation size does not match graph");
  return TreeRouter(t, p).run();
}

}  // namespace routesort
