#include "routesort/blossom.hpp"

#include <queue>

namespace routesort {

namespace {

class Blossom {
 public:
  Blossom(int n, std::span<const Edge> edges)
      : n_(n), adj_(static_cast<std::size_t>(n)), mate_(n, -1), parent_(n), base_(n), used_(n),
        in_blossom_(n) {
    for (const Edge& e : edges) {
      if (e.u == e.v) continue;
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
  }

  std::vector<int> solve() {
    // Greedy start, then one augmenting-path search per free vertex.
    for (int v = 0; v < n_; ++v)
      if (mate_[v] < 0)
        for (int w : adj_[v])
          if (mate_[w] < 0) {
            mate_[v] = w;
            mate_[w] = v;
            break;
          }
    for (int v = 0; v < n_; ++v)
      if (mate_[v] < 0) {
        const int end = find_path(v);
        for (int cur = end; cur >= 0;) {
          const int pv = parent_[cur];
          const int next = mate_[pv];
          mate_[cur] = pv;
          mate_[pv] = cur;
          cur = next;
        }
      }
    return mate_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    while (true) {
      a = base_[a];
      seen[a] = 1;
      if (mate_[a] < 0) break;
      a = parent_[mate_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[mate_[v]]] = 1;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  // Returns the free vertex ending an augmenting path from root, or -1.
  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] >= 0 && parent_[mate_[to]] >= 0)) {
          const int cur_base = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < n_; ++i)
            if (in_blossom_[base_[i]]) {
              base_[i] = cur_base;
              if (!used_[i]) {
                used_[i] = 1;
                q.push(i);
              }
            }
        } else if (parent_[to] < 0) {
          parent_[to] = v;
          if (mate_[to] < 0) return to;
          used_[mate_[to]] = 1;
          q.push(mate_[to]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> mate_, parent_, base_;
  std::vector<char> used_, in_blossom_;
};

}  // namespace

std::vector<int> maximum_matching(int n, std::span<const Edge> edges) {
  return Blossom(n, edges).solve();
}

}  // namespace routesort
