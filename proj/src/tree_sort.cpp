#include "routesort/tree_sort.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <queue>
#include <sstream>

namespace routesort {

namespace {

void require_tree(const Graph& t) {
  if (t.order() == 0 || !t.is_tree()) throw GraphError("input is not a tree");
}

// BFS layout of the part of t marked in `in`, rooted at `root`; `blocked`
// is never entered.
struct Rooted {
  std::vector<Vertex> order;  // BFS order from the root
  std::vector<int> depth;     // root has depth 1, 0 outside the part
  std::vector<std::vector<Vertex>> children;
  std::vector<int> size;
};

Rooted root_part(const Graph& t, const std::vector<char>& in, Vertex root, Vertex blocked) {
  const int n = t.order();
  Rooted r;
  r.depth.assign(static_cast<std::size_t>(n), 0);
  r.children.assign(static_cast<std::size_t>(n), {});
  r.size.assign(static_cast<std::size_t>(n), 1);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  r.order.push_back(root);
  r.depth[root] = 1;
  for (std::size_t head = 0; head < r.order.size(); ++head) {
    const Vertex v = r.order[head];
    for (Vertex w : t.neighbors(v))
      if (in[w] && w != blocked && r.depth[w] == 0) {
        r.depth[w] = r.depth[v] + 1;
        parent[w] = v;
        r.order.push_back(w);
      }
  }
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it)
    if (parent[*it] >= 0) {
      r.size[parent[*it]] += r.size[*it];
      r.children[parent[*it]].push_back(*it);
    }
  for (Vertex v : r.order)
    std::sort(r.children[v].begin(), r.children[v].end(), [&](Vertex a, Vertex b) {
      return r.size[a] != r.size[b] ? r.size[a] > r.size[b] : a < b;
    });
  return r;
}

std::vector<char> mask_of(int n, const std::vector<Vertex>& part) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : part) in[v] = 1;
  return in;
}

Vertex centroid_of(const Graph& t, const std::vector<Vertex>& part) {
  const auto in = mask_of(t.order(), part);
  const Rooted r = root_part(t, in, part.front(), -1);
  const int n = static_cast<int>(part.size());
  Vertex best = -1;
  for (Vertex v : r.order) {
    int worst = n - r.size[v];
    for (Vertex c : r.children[v]) worst = std::max(worst, r.size[c]);
    if (worst <= n / 2 && (best < 0 || v < best)) best = v;
  }
  return best;
}

CentroidDecomposition decompose_part(const Graph& t, const std::vector<Vertex>& part) {
  CentroidDecomposition cd;
  cd.root = part.size() == 1 ? part.front() : centroid_of(t, part);
  if (part.size() == 1) return cd;
  const auto in = mask_of(t.order(), part);
  for (Vertex a : t.neighbors(cd.root)) {
    if (!in[a]) continue;
    const Rooted r = root_part(t, in, a, cd.root);
    Subtree s;
    s.root = a;
    s.vertices = r.order;
    std::sort(s.vertices.begin(), s.vertices.end());
    for (Vertex v : r.order) {
      s.height = std::max(s.height, r.depth[v]);
      s.alpha = std::max(s.alpha, static_cast<int>(r.children[v].size()));
    }
    cd.subtrees.push_back(std::move(s));
  }
  std::sort(cd.subtrees.begin(), cd.subtrees.end(), [](const Subtree& a, const Subtree& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.vertices.front() < b.vertices.front();
  });
  for (const Subtree& s : cd.subtrees) cd.children.push_back(decompose_part(t, s.vertices));
  return cd;
}

void assign_ranks(const CentroidDecomposition& cd, int offset, std::vector<Vertex>& rank) {
  if (cd.subtrees.empty()) {
    rank[cd.root] = offset;
    return;
  }
  const int n1 = cd.subtrees[0].size();
  assign_ranks(cd.children[0], offset, rank);
  rank[cd.root] = offset + n1;
  int next = offset + n1 + 1;
  for (std::size_t i = 1; i < cd.subtrees.size(); ++i) {
    assign_ranks(cd.children[i], next, rank);
    next += cd.subtrees[i].size();
  }
}

}  // namespace

int CentroidDecomposition::order() const {
  int n = 1;
  for (const Subtree& s : subtrees) n += s.size();
  return n;
}

Vertex centroid(const Graph& t) {
  require_tree(t);
  std::vector<Vertex> all(static_cast<std::size_t>(t.order()));
  std::iota(all.begin(), all.end(), 0);
  return centroid_of(t, all);
}

CentroidDecomposition decompose(const Graph& t) {
  require_tree(t);
  std::vector<Vertex> all(static_cast<std::size_t>(t.order()));
  std::iota(all.begin(), all.end(), 0);
  return decompose_part(t, all);
}

Permutation mp_labeling(const CentroidDecomposition& cd, int n) {
  std::vector<Vertex> rank(static_cast<std::size_t>(n), -1);
  assign_ranks(cd, 0, rank);
  return Permutation(std::move(rank));
}

int swap_cycle_bound(const Subtree& ti, const Subtree& tj, int p, int slack) {
  const int beta = std::max({ti.alpha, tj.alpha, 1});
  return 2 * (ti.size() + beta * p) + slack;
}

SwapSchedule swap_schedule(const Graph& t, const Subtree& ti, Vertex r, const Subtree& tj, int cycles) {
  for (Vertex v : ti.vertices)
    if (std::binary_search(tj.vertices.begin(), tj.vertices.end(), v) || v == r)
      throw GraphError("swap subtrees overlap");
  const int n = t.order();
  const Rooted left = root_part(t, mask_of(n, ti.vertices), ti.root, r);
  const Rooted right = root_part(t, mask_of(n, tj.vertices), tj.root, r);
  std::vector<int> group(static_cast<std::size_t>(n), 0);
  for (Vertex v : left.order) group[v] = ti.height - left.depth[v] + 1;
  group[r] = ti.height + 1;
  for (Vertex v : right.order) group[v] = ti.height + 1 + right.depth[v];

  // For each vertex and parity of the lower group, the children reachable
  // through edges of that parity, in round-robin order.
  struct Slot {
    Vertex parent;
    std::vector<Vertex> kids;
    int next = 0;
  };
  std::vector<Slot> slots[2];
  auto add_slot = [&](Vertex x, const std::vector<Vertex>& kids) {
    std::vector<Vertex> by_parity[2];
    for (Vertex c : kids) by_parity[std::min(group[x], group[c]) % 2].push_back(c);
    for (int par = 0; par < 2; ++par)
      if (!by_parity[par].empty()) slots[par].push_back(Slot{x, std::move(by_parity[par])});
  };
  add_slot(r, {ti.root, tj.root});
  for (Vertex v : left.order) add_slot(v, left.children[v]);
  for (Vertex v : right.order) add_slot(v, right.children[v]);

  SwapSchedule out;
  out.cycle_count = cycles;
  for (int s = 0; s < 2 * cycles; ++s) {
    const int par = s % 2 == 0 ? 1 : 0;  // odd stages pair groups (g, g+1) with g odd
    DirectedMatching stage;
    for (Slot& slot : slots[par]) {
      const Vertex c = slot.kids[slot.next];
      slot.next = (slot.next + 1) % static_cast<int>(slot.kids.size());
      const Vertex lo = group[c] < group[slot.parent] ? c : slot.parent;
      const Vertex hi = lo == c ? slot.parent : c;
      stage.entries.push_back(Comparator{lo, hi, ExchangeMode::kDirected});
    }
    std::sort(stage.entries.begin(), stage.entries.end(),
              [](const Comparator& a, const Comparator& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    out.stages.push_back(std::move(stage));
  }
  return out;
}

namespace {

using StageList = std::vector<DirectedMatching>;

void overlay(StageList& into, const StageList& from) {
  if (into.size() < from.size()) into.resize(from.size());
  for (std::size_t s = 0; s < from.size(); ++s)
    into[s].entries.insert(into[s].entries.end(), from[s].entries.begin(), from[s].entries.end());
}

// Moves the maximum of T_1 + r onto r: levels bottom-up, each parent meets
// its children one per stage and keeps the larger value.
StageList bubble_max(const Graph& t, const Subtree& t1, Vertex r) {
  const Rooted rt = root_part(t, mask_of(t.order(), t1.vertices), t1.root, r);
  std::vector<std::vector<Vertex>> by_depth(static_cast<std::size_t>(t1.height) + 1);
  for (Vertex v : rt.order) by_depth[rt.depth[v]].push_back(v);
  StageList stages;
  for (int dep = t1.height - 1; dep >= 1; --dep) {
    std::size_t width = 0;
    for (Vertex v : by_depth[dep]) width = std::max(width, rt.children[v].size());
    for (std::size_t k = 0; k < width; ++k) {
      DirectedMatching stage;
      for (Vertex v : by_depth[dep])
        if (k < rt.children[v].size()) stage.entries.push_back(Comparator{rt.children[v][k], v, ExchangeMode::kDirected});
      stages.push_back(std::move(stage));
    }
  }
  stages.push_back(DirectedMatching{{Comparator{t1.root, r, ExchangeMode::kDirected}}});
  return stages;
}

class Builder {
 public:
  Builder(const Graph& t, int slack) : t_(t), slack_(slack) {}

  StageList build(const CentroidDecomposition& cd, std::vector<PassRecord>* passes) {
    StageList stages;
    const int d = cd.degree();
    if (d == 0) return stages;
    for (int q = 1; q <= d - 1; ++q) {
      PassRecord pass;
      pass.first_stage = stages.size();
      for (int j = 0; j + q < d; ++j) {
        const Subtree& ti = cd.subtrees[j];
        const Subtree& tj = cd.subtrees[j + 1];
        SwapRecord rec;
        rec.left = j;
        rec.p = cd.subtrees[j + q].size();
        rec.beta = std::max({ti.alpha, tj.alpha, 1});
        rec.cycles = swap_cycle_bound(ti, tj, rec.p, slack_);
        const SwapSchedule sch = swap_schedule(t_, ti, cd.root, tj, rec.cycles);
        stages.insert(stages.end(), sch.stages.begin(), sch.stages.end());
        pass.cycles += rec.cycles;
        pass.swaps.push_back(rec);
      }
      pass.end_stage = stages.size();
      if (passes) passes->push_back(std::move(pass));
    }

    StageList phase2 = bubble_max(t_, cd.subtrees[0], cd.root);
    const StageList inner = build(cd.children[0], nullptr);
    phase2.insert(phase2.end(), inner.begin(), inner.end());
    for (int i = 1; i < d; ++i) overlay(phase2, build(cd.children[i], nullptr));
    stages.insert(stages.end(), phase2.begin(), phase2.end());
    return stages;
  }

 private:
  const Graph& t_;
  int slack_;
};

}  // namespace

TreeSortBuild build_odd_even_tree_sort(const Graph& t, const TreeSortOptions& opts) {
  require_tree(t);
  TreeSortBuild out;
  out.swap_slack = opts.swap_slack;
  out.decomposition = decompose(t);
  Builder builder(t, opts.swap_slack);
  StageList stages = builder.build(out.decomposition, &out.passes);
  out.phase1_stages = out.passes.empty() ? 0 : out.passes.back().end_stage;
  for (const DirectedMatching& s : stages)
    if (s.empty()) throw std::logic_error("tree sort produced an empty stage");
  out.net = make_network(t.order(), std::move(stages), mp_labeling(out.decomposition, t.order()));
  return out;
}

SortingNetwork odd_even_tree_sort(const Graph& t) { return build_odd_even_tree_sort(t).net; }

TreeSortBuild build_verified_tree_sort(const Graph& t, bool* raised) {
  constexpr int kVerifyLimit = 20;
  TreeSortOptions opts;
  TreeSortBuild b = build_odd_even_tree_sort(t, opts);
  if (raised) *raised = false;
  if (t.order() > kVerifyLimit) return b;
  while (!verify_zero_one(b.net)) {
    if (raised) *raised = true;
    opts.swap_slack = std::max(1, opts.swap_slack * 2);
    if (opts.swap_slack > 4 * t.order() + 64) throw std::logic_error("tree sort failed verification");
    b = build_odd_even_tree_sort(t, opts);
  }
  return b;
}

DepthReport depth_accounting(const Graph& t, const TreeSortBuild& build) {
  DepthReport r;
  r.n = t.order();
  r.max_degree = t.max_degree();
  r.depth = build.net.depth();
  const auto& cd = build.decomposition;
  r.subtrees = cd.degree();
  long long swap_terms = 0;
  for (const PassRecord& p : build.passes) {
    r.pass_cycles.push_back(p.cycles);
    r.phase1_cycles += p.cycles;
    for (const SwapRecord& s : p.swaps) swap_terms += 2LL * s.beta * s.p + build.swap_slack;
  }
  for (int i = 0; i + 1 < cd.degree(); ++i) r.betas.push_back(std::max(cd.subtrees[i].alpha, cd.subtrees[i + 1].alpha));
  r.pass_bound = 2LL * r.subtrees * r.n + swap_terms;
  const double n = r.n, delta = r.max_degree;
  const double scale = std::min(delta * delta * n, n * n);
  r.depth_ratio = scale > 0 ? r.depth / scale : 0.0;
  return r;
}

std::string format_depth_report(const DepthReport& r) {
  std::ostringstream out;
  out << "n " << r.n << "\nmax_degree " << r.max_degree << "\nsubtrees " << r.subtrees << "\ndepth " << r.depth << '\n';
  out << "pass cycles\n";
  for (std::size_t j = 0; j < r.pass_cycles.size(); ++j) out << "  " << j + 1 << ' ' << r.pass_cycles[j] << '\n';
  out << "betas";
  for (int b : r.betas) out << ' ' << b;
  out << "\nphase1_cycles " << r.phase1_cycles << "\npass_bound " << r.pass_bound << " "
      << (r.phase1_cycles <= r.pass_bound ? "ok" : "EXCEEDED") << '\n';
  out << "depth/min(D^2 n, n^2) " << std::fixed << std::setprecision(4) << r.depth_ratio << '\n';
  return out.str();
}

}  // namespace routesort
