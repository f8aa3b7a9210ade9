#include <algorithm>

#include "routesort/route.hpp"

namespace routesort {

namespace {

// Every pebble picks a walk w[0..k] with w[0] its start, w[k] its destination
// and w[t+1] equal or adjacent to w[t]. A set of walks is a valid plan iff,
// pairwise, no two pebbles share a vertex at the same time and every move
// u -> v at step t is mirrored by the occupant of v moving v -> u. Both
// conditions are binary, so the search is a plain CSP with forward checking.
class WalkSearch {
 public:
  WalkSearch(const Graph& g, const Permutation& p, int k, const BoundedSearchOptions& opts)
      : g_(g), n_(g.order()), k_(k), stride_(k + 1) {
    if (p.size() != n_) throw GraphError("permutation size does not match graph");
    if (k < 0) throw std::invalid_argument("negative step bound");
    idle_.assign(static_cast<std::size_t>(n_), 0);
    for (Vertex v : opts.idle) {
      if (v < 0 || v >= n_) throw GraphError("idle vertex out of range");
      idle_[v] = 1;
    }
    dist_ = g.all_distances();
    domains_.resize(static_cast<std::size_t>(n_));
    for (int peb = 0; peb < n_; ++peb) build_walks(peb, p(peb));
  }

  std::size_t run(const std::function<bool(const RoutingPlan&)>& fn) {
    fn_ = &fn;
    reported_ = 0;
    stop_ = false;
    for (const auto& d : domains_)
      if (d.empty()) return 0;
    assigned_.assign(static_cast<std::size_t>(n_), -1);
    search(0);
    return reported_;
  }

 private:
  const Vertex* walk(int id) const { return &walks_[static_cast<std::size_t>(id) * stride_]; }

  void build_walks(int peb, Vertex dest) {
    std::vector<Vertex> cur(static_cast<std::size_t>(stride_));
    cur[0] = peb;
    if (idle_[peb]) {
      if (dest != peb) return;
      std::fill(cur.begin(), cur.end(), peb);
      push_walk(peb, cur);
      return;
    }
    extend(peb, dest, cur, 0);
  }

  void push_walk(int peb, const std::vector<Vertex>& w) {
    domains_[peb].push_back(static_cast<int>(walks_.size() / stride_));
    walks_.insert(walks_.end(), w.begin(), w.end());
  }

  void extend(int peb, Vertex dest, std::vector<Vertex>& cur, int t) {
    const Vertex at = cur[t];
    const int left = k_ - t;
    if (dist_[at][dest] < 0 || dist_[at][dest] > left) return;
    if (t == k_) {
      push_walk(peb, cur);
      return;
    }
    // Candidates in increasing label order, staying put included.
    std::vector<Vertex> next = g_.neighbors(at);
    next.insert(std::lower_bound(next.begin(), next.end(), at), at);
    for (Vertex w : next) {
      if (idle_[w]) continue;
      cur[t + 1] = w;
      extend(peb, dest, cur, t + 1);
    }
  }

  bool compatible(int a, int b) const {
    const Vertex* wa = walk(a);
    const Vertex* wb = walk(b);
    for (int t = 0; t <= k_; ++t)
      if (wa[t] == wb[t]) return false;
    for (int t = 0; t < k_; ++t) {
      if (wa[t] != wa[t + 1] && wb[t] == wa[t + 1] && wb[t + 1] != wa[t]) return false;
      if (wb[t] != wb[t + 1] && wa[t] == wb[t + 1] && wa[t + 1] != wb[t]) return false;
    }
    return true;
  }

  void search(int depth) {
    if (stop_) return;
    if (depth == n_) {
      report();
      return;
    }
    // Smallest remaining domain first, lowest pebble label on ties.
    int pick = -1;
    for (int q = 0; q < n_; ++q)
      if (assigned_[q] < 0 && (pick < 0 || domains_[q].size() < domains_[pick].size())) pick = q;

    const std::vector<int> options = domains_[pick];
    for (int choice : options) {
      assigned_[pick] = choice;
      std::vector<std::pair<int, std::vector<int>>> trail;
      bool wiped = false;
      for (int q = 0; q < n_ && !wiped; ++q) {
        if (assigned_[q] >= 0) continue;
        std::vector<int> kept;
        kept.reserve(domains_[q].size());
        for (int w : domains_[q])
          if (compatible(choice, w)) kept.push_back(w);
        if (kept.size() != domains_[q].size()) {
          wiped = kept.empty();
          trail.emplace_back(q, std::move(domains_[q]));
          domains_[q] = std::move(kept);
        }
      }
      if (!wiped) search(depth + 1);
      for (auto it = trail.rbegin(); it != trail.rend(); ++it) domains_[it->first] = std::move(it->second);
      assigned_[pick] = -1;
      if (stop_) return;
    }
  }

  void report() {
    RoutingPlan plan;
    plan.steps.resize(static_cast<std::size_t>(k_));
    for (int peb = 0; peb < n_; ++peb) {
      const Vertex* w = walk(assigned_[peb]);
      for (int t = 0; t < k_; ++t)
        if (w[t] < w[t + 1]) plan.steps[t].pairs.push_back(Edge{w[t], w[t + 1]});
    }
    for (auto& m : plan.steps) std::sort(m.pairs.begin(), m.pairs.end());
    ++reported_;
    if (!(*fn_)(plan)) stop_ = true;
  }

  const Graph& g_;
  int n_;
  int k_;
  int stride_;
  std::vector<char> idle_;
  std::vector<std::vector<int>> dist_;
  std::vector<Vertex> walks_;
  std::vector<std::vector<int>> domains_;
  std::vector<int> assigned_;
  const std::function<bool(const RoutingPlan&)>* fn_ = nullptr;
  std::size_t reported_ = 0;
  bool stop_ = false;
};

}  // namespace

std::size_t for_each_plan_within(const Graph& g, const Permutation& p, int k,
                                 const BoundedSearchOptions& opts,
                                 const std::function<bool(const RoutingPlan&)>& fn) {
  WalkSearch search(g, p, k, opts);
  return search.run(fn);
}

std::optional<RoutingPlan> rt_at_most_k(const Graph& g, const Permutation& p, int k,
                                        const BoundedSearchOptions& opts) {
  std::optional<RoutingPlan> found;
  for_each_plan_within(g, p, k, opts, [&](const RoutingPlan& plan) {
    RoutingPlan trimmed;
    for (const Matching& m : plan.steps)
      if (!m.empty()) trimmed.steps.push_back(m);
    found = std::move(trimmed);
    return false;
  });
  return found;
}

}  // namespace routesort
