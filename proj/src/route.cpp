#include "routesort/route.hpp"

#include <algorithm>
#include <atomic>
#include <queue>
#include <unordered_map>

#include <omp.h>

namespace routesort {

Permutation realized_permutation(const Graph& g, const RoutingPlan& plan) {
  PebbleConfiguration c = PebbleConfiguration::initial(g.order());
  for (const Matching& m : plan.steps) {
    validate_matching(g, m);
    apply_matching_inplace(c.at, m);
  }
  // c.at[v] is the pebble on v, so pebble c.at[v] was sent to v.
  std::vector<Vertex> dest(c.at.size());
  for (int v = 0; v < g.order(); ++v) dest[c.at[v]] = v;
  return Permutation(std::move(dest));
}

bool verify_plan(const Graph& g, const Permutation& p, const RoutingPlan& plan) {
  if (p.size() != g.order()) throw GraphError("permutation size does not match graph");
  return realized_permutation(g, plan) == p;
}

namespace {

using Packed = std::uint64_t;

Packed pack(std::span<const int> at) {
  Packed x = 0;
  for (std::size_t v = 0; v < at.size(); ++v) x |= static_cast<Packed>(at[v]) << (4 * v);
  return x;
}

Packed swap_nibbles(Packed x, int u, int v) {
  const Packed a = (x >> (4 * u)) & 15u;
  const Packed b = (x >> (4 * v)) & 15u;
  const Packed d = a ^ b;
  return x ^ ((d << (4 * u)) | (d << (4 * v)));
}

std::vector<int> component_ids(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.order()), -1);
  int next = 0;
  for (int s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    const auto d = g.distances_from(s);
    for (int v = 0; v < g.order(); ++v)
      if (d[v] >= 0) comp[v] = next;
    ++next;
  }
  return comp;
}

std::vector<Matching> nonempty_matchings(const Graph& g) {
  std::vector<Matching> ms;
  for_each_matching(g, [&](const Matching& m) {
    if (!m.empty()) ms.push_back(m);
    return true;
  });
  return ms;
}

}  // namespace

RoutingOutcome rt_exact(const Graph& g, const Permutation& p, int cap) {
  const int n = g.order();
  if (p.size() != n) throw GraphError("permutation size does not match graph");
  if (n > 16) throw GraphError("rt_exact supports at most 16 vertices");
  if (cap < 0) throw std::invalid_argument("negative step cap");

  RoutingOutcome out;
  const auto comp = component_ids(g);
  for (int i = 0; i < n; ++i)
    if (comp[i] != comp[p(i)]) {
      out.status = RoutingStatus::kInfeasible;
      return out;
    }
  if (p.is_identity()) {
    out.status = RoutingStatus::kSolved;
    out.plan = RoutingPlan{};
    return out;
  }

  std::vector<int> start(static_cast<std::size_t>(n));
  std::vector<int> goal(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    start[i] = i;
    goal[p(i)] = i;
  }
  const Packed source = pack(start);
  const Packed target = pack(goal);
  const auto moves = nonempty_matchings(g);

  // parent state and the index of the matching that produced the state
  std::unordered_map<Packed, std::pair<Packed, int>> parent;
  parent.emplace(source, std::pair{source, -1});
  std::vector<Packed> frontier{source};
  for (int depth = 1; depth <= cap && !frontier.empty(); ++depth) {
    std::vector<Packed> next;
    for (Packed s : frontier) {
      for (std::size_t mi = 0; mi < moves.size(); ++mi) {
        Packed t = s;
        for (const Edge& e : moves[mi].pairs) t = swap_nibbles(t, e.u, e.v);
        if (!parent.emplace(t, std::pair{s, static_cast<int>(mi)}).second) continue;
        if (t == target) {
          RoutingPlan plan;
          for (Packed cur = t; cur != source;) {
            const auto& [prev, idx] = parent.at(cur);
            plan.steps.push_back(moves[idx]);
            cur = prev;
          }
          std::reverse(plan.steps.begin(), plan.steps.end());
          out.status = RoutingStatus::kSolved;
          out.steps = depth;
          out.plan = std::move(plan);
          return out;
        }
        next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  out.status = frontier.empty() ? RoutingStatus::kInfeasible : RoutingStatus::kExceededCap;
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint32_t permutation_rank(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::uint32_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
    rank = rank * static_cast<std::uint32_t>(n - i) + static_cast<std::uint32_t>(smaller);
  }
  return rank;
}

void permutation_unrank(std::uint32_t rank, std::span<int> out) {
  const int n = static_cast<int>(out.size());
  // Lehmer digits, least significant (last position) first.
  int digits[RoutingTimeTable::kMaxOrder + 6];
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint32_t>(n - i);
    digits[i] = static_cast<int>(rank % base);
    rank /= base;
  }
  int pool[RoutingTimeTable::kMaxOrder + 6];
  for (int i = 0; i < n; ++i) pool[i] = i;
  int remaining = n;
  for (int i = 0; i < n; ++i) {
    out[i] = pool[digits[i]];
    for (int j = digits[i]; j + 1 < remaining; ++j) pool[j] = pool[j + 1];
    --remaining;
  }
}

int RoutingTimeTable::routing_time(const Permutation& p) const {
  const auto inv = p.inverse();
  return dist_[permutation_rank(inv.dest())];
}

int RoutingTimeTable::max_distance() const {
  int best = -1;
  for (auto d : dist_) best = std::max(best, static_cast<int>(d));
  return best;
}

namespace {

void check_table_order(const Graph& g) {
  if (g.order() > RoutingTimeTable::kMaxOrder)
    throw GraphError("routing time table limited to " +
                     std::to_string(RoutingTimeTable::kMaxOrder) + " vertices");
}

}  // namespace

RoutingTimeTable routing_time_table(const Graph& g) {
  check_table_order(g);
  const int n = g.order();
  const auto moves = nonempty_matchings(g);
  std::vector<std::int8_t> dist(factorial(n), -1);
  std::vector<int> cfg(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cfg[i] = i;
  std::queue<std::uint32_t> q;
  const auto root = permutation_rank(cfg);
  dist[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const std::uint32_t r = q.front();
    q.pop();
    permutation_unrank(r, cfg);
    const auto next_d = static_cast<std::int8_t>(dist[r] + 1);
    for (const Matching& m : moves) {
      apply_matching_inplace(cfg, m);
      const auto s = permutation_rank(cfg);
      if (dist[s] < 0) {
        dist[s] = next_d;
        q.push(s);
      }
      apply_matching_inplace(cfg, m);
    }
  }
  return RoutingTimeTable(n, std::move(dist));
}

RoutingTimeTable routing_time_table_parallel(const Graph& g) {
  check_table_order(g);
  const int n = g.order();
  const auto moves = nonempty_matchings(g);
  std::vector<std::int8_t> dist(factorial(n), -1);
  std::vector<int> ident(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ident[i] = i;
  const auto root = permutation_rank(ident);
  dist[root] = 0;
  std::vector<std::uint32_t> frontier{root};
  for (int level = 0; !frontier.empty(); ++level) {
    std::vector<std::uint32_t> next;
    const auto next_d = static_cast<std::int8_t>(level + 1);
    const auto count = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel
    {
      std::vector<std::uint32_t> local;
      std::vector<int> cfg(static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 256) nowait
      for (std::int64_t i = 0; i < count; ++i) {
        permutation_unrank(frontier[i], cfg);
        for (const Matching& m : moves) {
          apply_matching_inplace(cfg, m);
          const auto s = permutation_rank(cfg);
          std::atomic_ref<std::int8_t> slot(dist[s]);
          std::int8_t expected = -1;
          if (slot.load(std::memory_order_relaxed) < 0 &&
              slot.compare_exchange_strong(expected, next_d))
            local.push_back(s);
          apply_matching_inplace(cfg, m);
        }
      }
#pragma omp critical
      next.insert(next.end(), local.begin(), local.end());
    }
    frontier = std::move(next);
  }
  return RoutingTimeTable(n, std::move(dist));
}

WorstCase rt_worst_case(const Graph& g, int cap, bool parallel) {
  if (!g.connected()) throw GraphError("rt_worst_case requires a connected graph");
  const auto table = parallel ? routing_time_table_parallel(g) : routing_time_table(g);
  const auto& d = table.raw();
  const auto best = std::max_element(d.begin(), d.end());
  const int value = *best;
  if (value > cap) throw GraphError("routing number exceeds cap");
  std::vector<int> cfg(static_cast<std::size_t>(g.order()));
  permutation_unrank(static_cast<std::uint32_t>(best - d.begin()), cfg);
  // The configuration is p^-1 for the witness p.
  return WorstCase{value, Permutation(cfg).inverse()};
}

Graph spanning_tree(const Graph& g) {
  Graph t(g.order());
  if (g.order() == 0) return t;
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::queue<Vertex> q;
  seen[0] = 1;
  q.push(0);
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        t.add_edge(v, w);
        q.push(w);
      }
  }
  if (!t.is_tree()) throw GraphError("graph is not connected");
  return t;
}

}  // namespace routesort
