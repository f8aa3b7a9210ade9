#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "routesort/generators.hpp"
#include "routesort/tree_sort.hpp"

using namespace routesort;

namespace {

constexpr double kDepthConstant = 8.0;

Graph balanced_binary(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge((v - 1) / 2, v);
  return g;
}

std::uint64_t all_zero(const std::uint64_t* w, const std::vector<Vertex>& vs) {
  std::uint64_t any = 0;
  for (Vertex v : vs) any |= w[v];
  return ~any;
}

std::uint64_t all_one(const std::uint64_t* w, const std::vector<Vertex>& vs) {
  std::uint64_t all = ~std::uint64_t{0};
  for (Vertex v : vs) all &= w[v];
  return all;
}

// A random tree with a vertex r of degree >= 2 and two of its subtrees,
// larger first.
struct Joined {
  Graph t;
  Vertex r;
  Subtree left, right;
};

bool pick_joined(Rng& rng, int n, Joined& out) {
  out.t = random_tree(n, rng);
  const CentroidDecomposition cd = decompose(out.t);
  if (cd.degree() < 2) return false;
  const int i = static_cast<int>(rng() % (cd.degree() - 1));
  out.r = cd.root;
  out.left = cd.subtrees[i];
  out.right = cd.subtrees[i + 1];
  return true;
}

}  // namespace

TEST_CASE("centroid") {
  CHECK(centroid(Graph::path(3)) == 1);
  CHECK(centroid(Graph::star(5)) == 0);
  CHECK(centroid(Graph::path(4)) == 1);
  CHECK(centroid(Graph(1)) == 0);
  CHECK_THROWS_AS(centroid(Graph::cycle(4)), GraphError);
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const Graph t = random_tree(n, rng);
    const CentroidDecomposition cd = decompose(t);
    CHECK(cd.root == centroid(t));
    for (const Subtree& s : cd.subtrees) CHECK(s.size() <= n / 2);
  }
}

TEST_CASE("decomposition") {
  const auto p3 = decompose(Graph::path(3));
  CHECK(p3.root == 1);
  REQUIRE(p3.degree() == 2);
  CHECK(p3.subtrees[0].vertices == std::vector<Vertex>{0});
  CHECK(p3.subtrees[1].vertices == std::vector<Vertex>{2});

  const auto star = decompose(Graph::star(6));
  CHECK(star.root == 0);
  CHECK(star.degree() == 5);

  const auto bin = decompose(balanced_binary(7));
  CHECK(bin.root == 0);
  REQUIRE(bin.degree() == 2);
  CHECK(bin.subtrees[0].size() == 3);
  CHECK(bin.subtrees[1].size() == 3);
  CHECK(bin.subtrees[0].alpha == 2);
  CHECK(bin.subtrees[0].height == 2);

  Rng rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const auto cd = decompose(random_tree(n, rng));
    CHECK(cd.order() == n);
    for (int i = 0; i + 1 < cd.degree(); ++i) CHECK(cd.subtrees[i].size() >= cd.subtrees[i + 1].size());
  }
  CHECK_THROWS_AS(decompose(Graph::cycle(5)), GraphError);
}

TEST_CASE("MP labeling") {
  CHECK(mp_labeling(decompose(Graph(1)), 1)(0) == 0);
  CHECK(mp_labeling(decompose(Graph::path(3)), 3).is_identity());
  const Permutation star = mp_labeling(decompose(Graph::star(4)), 4);
  CHECK(star.dest() == std::vector<Vertex>{1, 0, 2, 3});

  // Rule 1: T_1 + r holds ranks 0..n_1, r the largest of them.
  Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 25);
    const Graph t = random_tree(n, rng);
    const auto cd = decompose(t);
    const Permutation rank = mp_labeling(cd, n);
    const int n1 = cd.subtrees[0].size();
    CHECK(rank(cd.root) == n1);
    for (Vertex v : cd.subtrees[0].vertices) CHECK(rank(v) < n1);
    int lo = n1 + 1;
    for (int i = 1; i < cd.degree(); ++i) {
      for (Vertex v : cd.subtrees[i].vertices) {
        CHECK(rank(v) >= lo);
        CHECK(rank(v) < lo + cd.subtrees[i].size());
      }
      lo += cd.subtrees[i].size();
    }
  }
}

TEST_CASE("swap on two singletons is odd-even transposition on P3") {
  const Graph p3 = Graph::path(3);
  const auto cd = decompose(p3);
  const SwapSchedule s = swap_schedule(p3, cd.subtrees[0], cd.root, cd.subtrees[1], 3);
  REQUIRE(s.stages.size() == 6);
  for (std::size_t k = 0; k < s.stages.size(); ++k) {
    REQUIRE(s.stages[k].entries.size() == 1);
    const Comparator c = s.stages[k].entries[0];
    CHECK(c.u == (k % 2 == 0 ? 0 : 1));
    CHECK(c.v == (k % 2 == 0 ? 1 : 2));
    CHECK(c.mode == ExchangeMode::kDirected);
  }
  CHECK_THROWS_AS(swap_schedule(p3, cd.subtrees[0], cd.root, cd.subtrees[0], 1), GraphError);
}

TEST_CASE("swap separates zeros and ones on joined trees") {
  Rng rng(73);
  int checked = 0;
  while (checked < 150) {
    Joined j;
    if (!pick_joined(rng, 3 + static_cast<int>(rng() % 10), j)) continue;
    std::vector<Vertex> left = j.left.vertices;
    left.push_back(j.r);
    const int cycles = swap_cycle_bound(j.left, j.right, j.right.size(), kDefaultSwapSlack);
    const int beta = std::max({j.left.alpha, j.right.alpha, 1});
    CHECK(cycles <= 2 * (j.left.size() + beta * j.right.size()) + kDefaultSwapSlack);
    const SwapSchedule s = swap_schedule(j.t, j.left, j.r, j.right, cycles);
    CHECK(s.cycle_count == cycles);
    const SortingNetwork net = make_network(j.t.order(), s.stages, Permutation::identity(j.t.order()));
    const bool ok = zero_one_all(net, net.stages.size(), [&](const std::uint64_t* w) {
      return ~(all_zero(w, left) | all_one(w, j.right.vertices));
    });
    CHECK(ok);
    ++checked;
  }
}

TEST_CASE("tree sort network basics") {
  CHECK(odd_even_tree_sort(Graph(1)).depth() == 0);
  const SortingNetwork two = odd_even_tree_sort(Graph::path(2));
  CHECK(two.depth() == 1);
  CHECK(verify_all_permutations(two));
  for (int n = 2; n <= 14; ++n) {
    const SortingNetwork net = odd_even_tree_sort(Graph::path(n));
    CHECK(verify_zero_one(net));
    CHECK(net.depth() <= kDepthConstant * 2 * n);
  }
  CHECK_THROWS_AS(odd_even_tree_sort(Graph::cycle(4)), GraphError);
}

TEST_CASE("tree sort verifies on random trees") {
  Rng rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Graph t = random_tree(n, rng);
    const SortingNetwork net = odd_even_tree_sort(t);
    CHECK(verify_zero_one(net));
    if (n <= 7) CHECK(verify_all_permutations(net));
    for (const Edge& e : net.host.edges()) CHECK(t.has_edge(e.u, e.v));
    const double n2 = static_cast<double>(n) * n;
    const double d2n = static_cast<double>(t.max_degree()) * t.max_degree() * n;
    CHECK(net.depth() <= kDepthConstant * std::min(d2n, n2));
  }
}

TEST_CASE("serial and parallel verifiers agree on tree networks") {
  Rng rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph t = random_tree(3 + static_cast<int>(rng() % 6), rng);
    SortingNetwork net = odd_even_tree_sort(t);
    CHECK(verify_zero_one(net) == verify_zero_one_serial(net));
    CHECK(verify_all_permutations(net) == verify_all_permutations_serial(net));
    net.stages.pop_back();  // truncated networks must fail identically
    CHECK(verify_zero_one(net) == verify_zero_one_serial(net));
    CHECK(verify_all_permutations(net) == verify_all_permutations_serial(net));
  }
}

TEST_CASE("phase 1 leaves every subtree holding its block") {
  Rng rng(89);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 9);
    const Graph t = random_tree(n, rng);
    const TreeSortBuild b = build_odd_even_tree_sort(t);
    const auto& cd = b.decomposition;
    for (int rep = 0; rep < 20; ++rep) {
      const Permutation input = random_permutation(n, rng);
      const auto out = run_network(b.net, input.dest(), b.phase1_stages);
      std::vector<int> first;
      for (Vertex v : cd.subtrees[0].vertices) first.push_back(out[v]);
      first.push_back(out[cd.root]);
      std::sort(first.begin(), first.end());
      std::vector<int> expect(first.size());
      std::iota(expect.begin(), expect.end(), 0);
      CHECK(first == expect);
      int lo = cd.subtrees[0].size() + 1;
      for (int i = 1; i < cd.degree(); ++i) {
        for (Vertex v : cd.subtrees[i].vertices) {
          CHECK(out[v] >= lo);
          CHECK(out[v] < lo + cd.subtrees[i].size());
        }
        lo += cd.subtrees[i].size();
      }
    }
  }
}

TEST_CASE("after the first pass the last subtree is all ones or everything before it is zero") {
  Rng rng(97);
  int checked = 0;
  while (checked < 60) {
    const Graph t = random_tree(3 + static_cast<int>(rng() % 10), rng);
    const TreeSortBuild b = build_odd_even_tree_sort(t);
    if (b.passes.empty()) continue;
    const auto& cd = b.decomposition;
    std::vector<Vertex> before{cd.root};
    for (int i = 0; i + 1 < cd.degree(); ++i)
      before.insert(before.end(), cd.subtrees[i].vertices.begin(), cd.subtrees[i].vertices.end());
    const auto& last = cd.subtrees.back().vertices;
    CHECK(zero_one_all(b.net, b.passes.front().end_stage,
                       [&](const std::uint64_t* w) { return ~(all_one(w, last) | all_zero(w, before)); }));
    ++checked;
  }
}

TEST_CASE("construction is oblivious and deterministic") {
  Rng rng(101);
  const Graph t = random_tree(15, rng);
  const TreeSortBuild a = build_odd_even_tree_sort(t);
  const TreeSortBuild b = build_odd_even_tree_sort(t);
  CHECK(a.net.stages == b.net.stages);
  CHECK(a.net.order == b.net.order);
}

TEST_CASE("stars need quadratic depth") {
  for (int n = 3; n <= 20; ++n) {
    const SortingNetwork net = odd_even_tree_sort(Graph::star(n));
    CHECK(net.depth() >= n * n / 8.0);
    CHECK(net.depth() <= kDepthConstant * n * n);
    if (n <= 12) CHECK(verify_zero_one(net));
  }
}

TEST_CASE("verified build keeps the default slack") {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    bool raised = true;
    const TreeSortBuild b = build_verified_tree_sort(random_tree(2 + static_cast<int>(rng() % 10), rng), &raised);
    CHECK_FALSE(raised);
    CHECK(b.swap_slack == kDefaultSwapSlack);
  }
}

TEST_CASE("depth accounting") {
  const Graph p3 = Graph::path(3);
  const DepthReport single = depth_accounting(p3, build_odd_even_tree_sort(p3));
  REQUIRE(single.pass_cycles.size() == 1);
  CHECK(single.pass_cycles[0] == 2 * (1 + 1) + kDefaultSwapSlack);
  CHECK(single.phase1_cycles <= single.pass_bound);

  const Graph star = Graph::star(10);
  const DepthReport s = depth_accounting(star, build_odd_even_tree_sort(star));
  CHECK(s.subtrees == 9);
  CHECK(s.pass_cycles.size() == 8);
  CHECK(s.phase1_cycles <= s.pass_bound);
  CHECK(s.depth >= 100 / 8);
  CHECK(format_depth_report(s).find("pass_bound") != std::string::npos);

  Rng rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph t = random_tree(5 + static_cast<int>(rng() % 60), rng);
    const DepthReport r = depth_accounting(t, build_odd_even_tree_sort(t));
    CHECK(r.phase1_cycles <= r.pass_bound);
    CHECK(r.depth_ratio <= kDepthConstant);
  }
}
