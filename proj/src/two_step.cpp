#include "routesort/two_step.hpp"

#include <algorithm>

#include "routesort/blossom.hpp"

namespace routesort {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

std::vector<std::pair<int, int>> reflection(int length, int axis) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < length; ++x) {
    const int y = mod(axis - x, length);
    if (x < y) pairs.emplace_back(x, y);
  }
  return pairs;
}

Matching to_matching(std::span<const Vertex> cycle, const std::vector<std::pair<int, int>>& pos) {
  Matching m;
  for (const auto& [a, b] : pos) m.pairs.push_back(Edge::make(cycle[a], cycle[b]));
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

void merge_into(Matching& dst, const Matching& src) {
  dst.pairs.insert(dst.pairs.end(), src.pairs.begin(), src.pairs.end());
}

}  // namespace

CliqueScheme scheme_for_shift(int length, int shift) {
  if (length < 2) throw std::invalid_argument("cycle length must be at least 2");
  CliqueScheme s;
  s.length = length;
  s.shift = mod(shift, length);
  s.first = reflection(length, s.shift);
  s.second = reflection(length, s.shift + 1);
  return s;
}

CliqueScheme clique_two_step_scheme(int length, int i, int j) {
  if (!(0 <= i && i < j && j < length)) throw std::invalid_argument("invalid scheme anchor");
  CliqueScheme s = scheme_for_shift(length, i + j);
  s.wrap = (length - j + i - 1) / 2;
  return s;
}

std::optional<RoutableCycle> individually_routable(const Graph& g, std::span<const Vertex> cycle) {
  const int len = static_cast<int>(cycle.size());
  if (len < 2) return std::nullopt;
  std::vector<int> pos(static_cast<std::size_t>(g.order()), -1);
  for (int x = 0; x < len; ++x) pos[cycle[x]] = x;
  // Edge {a, b} lies in the first step of scheme a + b and the second step
  // of scheme a + b - 1.
  std::vector<int> counter(static_cast<std::size_t>(len), 0);
  for (int x = 0; x < len; ++x)
    for (Vertex w : g.neighbors(cycle[x])) {
      const int y = pos[w];
      if (y <= x) continue;
      ++counter[mod(x + y, len)];
      ++counter[mod(x + y - 1, len)];
    }
  // Every scheme uses exactly len - 1 distinct pairs.
  for (int s = 0; s < len; ++s)
    if (counter[s] == len - 1) {
      RoutableCycle rc;
      rc.scheme = scheme_for_shift(len, s);
      rc.witness.first = to_matching(cycle, rc.scheme.first);
      rc.witness.second = to_matching(cycle, rc.scheme.second);
      return rc;
    }
  return std::nullopt;
}

namespace {

PairedScheme paired_witness(std::span<const Vertex> c1, std::span<const Vertex> c2, int offset) {
  const int m = static_cast<int>(c1.size());
  PairedScheme ps;
  ps.offset = offset;
  for (int x = 0; x < m; ++x) {
    ps.witness.first.pairs.push_back(Edge::make(c1[x], c2[mod(offset - x, m)]));
    ps.witness.second.pairs.push_back(Edge::make(c1[x], c2[mod(offset - x + 1, m)]));
  }
  std::sort(ps.witness.first.pairs.begin(), ps.witness.first.pairs.end());
  std::sort(ps.witness.second.pairs.begin(), ps.witness.second.pairs.end());
  return ps;
}

}  // namespace

std::optional<PairedScheme> mutually_routable(const Graph& g, std::span<const Vertex> c1,
                                              std::span<const Vertex> c2) {
  if (c1.size() != c2.size() || c1.size() < 2) return std::nullopt;
  const int m = static_cast<int>(c1.size());
  for (int offset = 0; offset < m; ++offset) {
    bool ok = true;
    for (int x = 0; x < m && ok; ++x)
      ok = g.has_edge(c1[x], c2[mod(offset - x, m)]) && g.has_edge(c1[x], c2[mod(offset - x + 1, m)]);
    if (ok) return paired_witness(c1, c2, offset);
  }
  return std::nullopt;
}

CycleGraph build_cycle_graph(const Graph& g, const Permutation& p) {
  CycleGraph cg;
  cg.cycles = cycle_decomposition(p).cycles;
  const int k = cg.order();
  std::vector<int> cid(static_cast<std::size_t>(g.order()), -1);
  std::vector<int> pos(static_cast<std::size_t>(g.order()), -1);
  for (int c = 0; c < k; ++c)
    for (int x = 0; x < static_cast<int>(cg.cycles[c].size()); ++x) {
      cid[cg.cycles[c][x]] = c;
      pos[cg.cycles[c][x]] = x;
    }
  cg.loops.reserve(static_cast<std::size_t>(k));
  for (const auto& c : cg.cycles) cg.loops.push_back(individually_routable(g, c));

  // One pass over cross edges. Edge (c1[x], c2[y]) belongs to the first step
  // of alignment x + y and the second step of alignment x + y - 1; an
  // alignment is complete once all 2m of its edges have been seen.
  std::map<std::pair<int, int>, std::vector<int>> counters;
  for (int c = 0; c < k; ++c)
    for (Vertex u : cg.cycles[c])
      for (Vertex w : g.neighbors(u)) {
        const int d = cid[w];
        if (d <= c) continue;
        const int m = static_cast<int>(cg.cycles[c].size());
        if (static_cast<int>(cg.cycles[d].size()) != m) continue;
        auto& cnt = counters[{c, d}];
        if (cnt.empty()) cnt.assign(static_cast<std::size_t>(m), 0);
        ++cnt[mod(pos[u] + pos[w], m)];
        ++cnt[mod(pos[u] + pos[w] - 1, m)];
      }
  for (const auto& [key, cnt] : counters) {
    const int m = static_cast<int>(cnt.size());
    for (int offset = 0; offset < m; ++offset)
      if (cnt[offset] == 2 * m) {
        cg.edges.emplace(key, paired_witness(cg.cycles[key.first], cg.cycles[key.second], offset));
        break;
      }
  }
  return cg;
}

std::optional<LoopCover> loop_perfect_matching(int order, std::span<const char> loops,
                                               std::span<const std::pair<int, int>> edges) {
  std::vector<Edge> doubled;
  for (const auto& [a, b] : edges) {
    doubled.push_back(Edge::make(a, b));
    doubled.push_back(Edge::make(a + order, b + order));
  }
  for (int v = 0; v < order; ++v)
    if (loops[v]) doubled.push_back(Edge{v, v + order});
  const auto mate = maximum_matching(2 * order, doubled);
  LoopCover cover;
  for (int v = 0; v < order; ++v) {
    if (mate[v] < 0) return std::nullopt;
    if (mate[v] >= order) cover.looped.push_back(v);
    else if (v < mate[v]) cover.paired.emplace_back(v, mate[v]);
  }
  return cover;
}

std::optional<LoopCover> loop_perfect_matching(const CycleGraph& cg) {
  std::vector<char> loops(static_cast<std::size_t>(cg.order()), 0);
  for (int i = 0; i < cg.order(); ++i) loops[i] = cg.has_loop(i) ? 1 : 0;
  std::vector<std::pair<int, int>> edges;
  for (const auto& [key, scheme] : cg.edges) edges.push_back(key);
  return loop_perfect_matching(cg.order(), loops, edges);
}

RoutingOutcome decide_two_step(const Graph& g, const Permutation& p) {
  if (p.size() != g.order()) throw GraphError("permutation size does not match graph");
  if (!g.connected()) throw GraphError("decide_two_step requires a connected graph");
  RoutingOutcome out;
  out.status = RoutingStatus::kSolved;
  if (p.is_identity()) {
    out.plan = RoutingPlan{};
    return out;
  }
  const auto cd = cycle_decomposition(p);
  const bool one_step = std::all_of(cd.cycles.begin(), cd.cycles.end(), [&](const auto& c) {
    return c.size() == 2 && g.has_edge(c[0], c[1]);
  });
  if (one_step) {
    Matching m;
    for (const auto& c : cd.cycles) m.pairs.push_back(Edge::make(c[0], c[1]));
    std::sort(m.pairs.begin(), m.pairs.end());
    out.steps = 1;
    out.plan = RoutingPlan{{std::move(m)}};
    return out;
  }

  const CycleGraph cg = build_cycle_graph(g, p);
  const auto cover = loop_perfect_matching(cg);
  if (!cover) {
    out.status = RoutingStatus::kExceededCap;
    return out;
  }
  TwoStepWitness plan;
  for (int c : cover->looped) {
    merge_into(plan.first, cg.loops[c]->witness.first);
    merge_into(plan.second, cg.loops[c]->witness.second);
  }
  for (const auto& key : cover->paired) {
    const PairedScheme& ps = cg.edges.at(key);
    merge_into(plan.first, ps.witness.first);
    merge_into(plan.second, ps.witness.second);
  }
  std::sort(plan.first.pairs.begin(), plan.first.pairs.end());
  std::sort(plan.second.pairs.begin(), plan.second.pairs.end());
  out.steps = 2;
  out.plan = RoutingPlan{{std::move(plan.first), std::move(plan.second)}};
  return out;
}

}  // namespace routesort
