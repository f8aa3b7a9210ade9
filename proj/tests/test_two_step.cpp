#include <chrono>
#include <cmath>
#include <set>

#include "doctest.h"
#include "routesort/blossom.hpp"
#include "routesort/generators.hpp"
#include "routesort/two_step.hpp"

using namespace routesort;

namespace {

Permutation perm1(std::vector<int> one_based) {
  for (int& d : one_based) --d;
  return Permutation(std::move(one_based));
}

// Position reached after applying one reflection (pairs) to x.
int apply_pairs(const std::vector<std::pair<int, int>>& pairs, int x) {
  for (const auto& [a, b] : pairs) {
    if (a == x) return b;
    if (b == x) return a;
  }
  return x;
}

std::set<std::pair<int, int>> as_set(const std::vector<std::pair<int, int>>& v) { return {v.begin(), v.end()}; }

int brute_max_matching(int n, const std::vector<Edge>& edges) {
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    int size = 0;
    bool ok = true;
    for (std::size_t e = 0; e < edges.size() && ok; ++e)
      if ((mask >> e) & 1) {
        ok = !used[edges[e].u] && !used[edges[e].v];
        used[edges[e].u] = used[edges[e].v] = 1;
        ++size;
      }
    if (ok) best = std::max(best, size);
  }
  return best;
}

}  // namespace

TEST_CASE("clique schemes rotate the cycle by one") {
  const auto two = clique_two_step_scheme(2, 0, 1);
  CHECK(two.first == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(two.second.empty());

  const auto four = clique_two_step_scheme(4, 0, 1);
  CHECK(four.first == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(four.second == std::vector<std::pair<int, int>>{{0, 2}});
  CHECK(four.wrap == 1);
  CHECK_THROWS(clique_two_step_scheme(4, 2, 1));
  CHECK_THROWS(clique_two_step_scheme(4, 0, 4));

  for (int len = 2; len <= 10; ++len)
    for (int i = 0; i < len; ++i)
      for (int j = i + 1; j < len; ++j) {
        const auto s = clique_two_step_scheme(len, i, j);
        CHECK(s.edge_count() == len - 1);
        for (int x = 0; x < len; ++x) CHECK(apply_pairs(s.second, apply_pairs(s.first, x)) == (x + 1) % len);
      }
}

TEST_CASE("scheme edge sets per step are disjoint across schemes") {
  for (int len = 2; len <= 10; ++len) {
    std::set<std::pair<int, int>> firsts, seconds;
    std::size_t total_first = 0, total_second = 0;
    std::set<std::pair<std::set<std::pair<int, int>>, std::set<std::pair<int, int>>>> distinct;
    for (int s = 0; s < len; ++s) {
      const auto sc = scheme_for_shift(len, s);
      firsts.insert(sc.first.begin(), sc.first.end());
      seconds.insert(sc.second.begin(), sc.second.end());
      total_first += sc.first.size();
      total_second += sc.second.size();
      distinct.insert({as_set(sc.first), as_set(sc.second)});
    }
    CHECK(firsts.size() == total_first);
    CHECK(seconds.size() == total_second);
    CHECK(static_cast<int>(distinct.size()) == len);
  }
  // The same pair does appear in two schemes, once per step.
  const auto a = as_set(scheme_for_shift(5, 1).first);
  const auto b = as_set(scheme_for_shift(5, 0).second);
  CHECK(a.count({0, 1}) == 1);
  CHECK(b.count({0, 1}) == 1);
}

TEST_CASE("individual routability") {
  const std::vector<Vertex> pair{0, 1};
  CHECK(individually_routable(Graph::path(2), pair));
  const std::vector<Vertex> tri{0, 1, 2};
  const auto k3 = individually_routable(Graph::complete(3), tri);
  REQUIRE(k3);
  const Permutation rot = perm1({2, 3, 1});
  CHECK(verify_plan(Graph::complete(3), rot, RoutingPlan{{k3->witness.first, k3->witness.second}}));
  // The rotation along a path needs only two steps: swap the tail, then the head.
  const auto path_rot = individually_routable(Graph::path(3), tri);
  REQUIRE(path_rot);
  CHECK(rt_exact(Graph::path(3), rot, 5).steps == 2);
  CHECK(verify_plan(Graph::path(3), rot, RoutingPlan{{path_rot->witness.first, path_rot->witness.second}}));
  const std::vector<Vertex> ends{0, 2};
  CHECK_FALSE(individually_routable(Graph::path(3), ends));
  const std::vector<Vertex> square{0, 1, 2, 3};
  CHECK_FALSE(individually_routable(Graph::path(4), square));
  CHECK(rt_exact(Graph::path(4), perm1({2, 3, 4, 1}), 9).steps == 3);
}

TEST_CASE("mutual routability") {
  const std::vector<Vertex> a{0, 1}, b{2, 3, 4};
  CHECK_FALSE(mutually_routable(Graph::complete(5), a, b));

  const Graph c4 = Graph::cycle(4);
  const std::vector<Vertex> c1{0, 2}, c2{1, 3};
  const auto ps = mutually_routable(c4, c1, c2);
  REQUIRE(ps);
  const Permutation p = perm1({3, 4, 1, 2});
  CHECK(verify_plan(c4, p, RoutingPlan{{ps->witness.first, ps->witness.second}}));
  CHECK(ps->witness.first.pairs == std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK(ps->witness.second.pairs == std::vector<Edge>{{0, 3}, {1, 2}});

  Graph apart(4);
  apart.add_edge(0, 1);
  apart.add_edge(2, 3);
  const std::vector<Vertex> t1{0, 1}, t2{2, 3};
  CHECK_FALSE(mutually_routable(apart, t1, t2));
}

TEST_CASE("cycle graph") {
  CHECK(build_cycle_graph(Graph::complete(3), Permutation::identity(3)).order() == 0);

  const auto k4 = build_cycle_graph(Graph::complete(4), perm1({2, 1, 4, 3}));
  CHECK(k4.order() == 2);
  CHECK(k4.has_loop(0));
  CHECK(k4.has_loop(1));
  CHECK(k4.edges.count({0, 1}) == 1);

  const auto c4 = build_cycle_graph(Graph::cycle(4), perm1({3, 4, 1, 2}));
  CHECK(c4.order() == 2);
  CHECK_FALSE(c4.has_loop(0));
  CHECK_FALSE(c4.has_loop(1));
  CHECK(c4.edges.size() == 1);
}

TEST_CASE("cycle graph edges match the alignment search") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 5);
    const Graph g = random_connected_graph(n, 0.5, rng);
    const Permutation p = random_permutation(n, rng);
    const auto cg = build_cycle_graph(g, p);
    for (int i = 0; i < cg.order(); ++i)
      for (int j = i + 1; j < cg.order(); ++j)
        CHECK(cg.edges.count({i, j}) == (mutually_routable(g, cg.cycles[i], cg.cycles[j]) ? 1u : 0u));
  }
}

TEST_CASE("loop-aware perfect matching") {
  const std::vector<std::pair<int, int>> none;
  CHECK(loop_perfect_matching(0, std::vector<char>{}, none));
  CHECK(loop_perfect_matching(1, std::vector<char>{1}, none));
  CHECK_FALSE(loop_perfect_matching(1, std::vector<char>{0}, none));
  const std::vector<std::pair<int, int>> one{{0, 1}};
  CHECK(loop_perfect_matching(2, std::vector<char>{0, 0}, one));
  CHECK_FALSE(loop_perfect_matching(3, std::vector<char>{1, 0, 0}, none));

  // A path w - v where v has a loop: w can only use the edge.
  const auto pendant = loop_perfect_matching(2, std::vector<char>{0, 1}, one);
  REQUIRE(pendant);
  CHECK(pendant->paired.size() == 1);

  // Triangle with one loop: loop covers a vertex, the edge covers the rest.
  const std::vector<std::pair<int, int>> tri{{0, 1}, {1, 2}, {0, 2}};
  CHECK(loop_perfect_matching(3, std::vector<char>{0, 0, 1}, tri));
  CHECK_FALSE(loop_perfect_matching(3, std::vector<char>{0, 0, 0}, tri));
}

TEST_CASE("blossom matches brute force") {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    std::vector<Edge> edges;
    std::bernoulli_distribution coin(0.35);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng) && edges.size() < 16) edges.push_back(Edge{u, v});
    const auto mate = maximum_matching(n, edges);
    int size = 0;
    for (int v = 0; v < n; ++v)
      if (mate[v] > v) {
        ++size;
        CHECK(mate[mate[v]] == v);
        CHECK(std::find(edges.begin(), edges.end(), Edge{v, mate[v]}) != edges.end());
      }
    CHECK(size == brute_max_matching(n, edges));
  }
}

TEST_CASE("decide_two_step examples") {
  const auto k3 = decide_two_step(Graph::complete(3), perm1({2, 3, 1}));
  REQUIRE(k3.status == RoutingStatus::kSolved);
  CHECK(k3.steps == 2);
  CHECK(verify_plan(Graph::complete(3), perm1({2, 3, 1}), *k3.plan));

  const auto id = decide_two_step(Graph::path(3), Permutation::identity(3));
  CHECK(id.steps == 0);

  const auto one = decide_two_step(Graph::path(4), perm1({2, 1, 4, 3}));
  CHECK(one.steps == 1);

  CHECK(decide_two_step(Graph::path(3), perm1({3, 2, 1})).status == RoutingStatus::kExceededCap);

  const auto c4 = decide_two_step(Graph::cycle(4), perm1({3, 4, 1, 2}));
  REQUIRE(c4.status == RoutingStatus::kSolved);
  CHECK(verify_plan(Graph::cycle(4), perm1({3, 4, 1, 2}), *c4.plan));

  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS(decide_two_step(split, Permutation::identity(4)), GraphError);
}

TEST_CASE("decide_two_step agrees with exhaustive search for n <= 4") {
  for (int n = 1; n <= 4; ++n)
    for_each_connected_graph(n, [&](const Graph& g) {
      const RoutingTimeTable table = routing_time_table(g);
      std::vector<int> d(static_cast<std::size_t>(n));
      for (std::uint32_t r = 0; r < factorial(n); ++r) {
        permutation_unrank(r, d);
        const Permutation p(d);
        const int rt = table.routing_time(p);
        const auto out = decide_two_step(g, p);
        CHECK((out.status == RoutingStatus::kSolved) == (rt <= 2));
        if (out.status == RoutingStatus::kSolved) {
          CHECK(out.steps == rt);
          CHECK(verify_plan(g, p, *out.plan));
        }
      }
    });
}

TEST_CASE("cliques route everything in two steps") {
  Rng rng(47);
  for (int n = 2; n <= 7; ++n) {
    const Graph k = Graph::complete(n);
    for (int trial = 0; trial < 200; ++trial) {
      const Permutation p = random_permutation(n, rng);
      const auto out = decide_two_step(k, p);
      REQUIRE(out.status == RoutingStatus::kSolved);
      CHECK(verify_plan(k, p, *out.plan));
    }
  }
}

TEST_CASE("non-cliques reject a transposition on a non-edge") {
  for (int n = 3; n <= 6; ++n)
    for_each_connected_graph(n, [&](const Graph& g) {
      if (g.size() == n * (n - 1) / 2) return;
      bool rejected = false;
      for (int u = 0; u < n && !rejected; ++u)
        for (int v = u + 1; v < n && !rejected; ++v) {
          if (g.has_edge(u, v)) continue;
          std::vector<Vertex> d(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) d[i] = i;
          std::swap(d[u], d[v]);
          rejected = decide_two_step(g, Permutation(d)).status == RoutingStatus::kExceededCap;
        }
      CHECK(rejected);
    });
}

TEST_CASE("cycle graph construction scales linearly in the edge count") {
  Rng rng(53);
  std::vector<double> xs, ys;
  for (int n : {500, 1000, 2000, 4000}) {
    const Graph g = random_connected_graph(n, 8.0 / n, rng);
    const Permutation p = random_permutation(n, rng);
    const auto start = std::chrono::steady_clock::now();
    for (int rep = 0; rep < 5; ++rep) CHECK(build_cycle_graph(g, p).order() >= 0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    xs.push_back(std::log(static_cast<double>(g.size())));
    ys.push_back(std::log(std::max(secs, 1e-6)));
  }
  const double slope = (ys.back() - ys.front()) / (xs.back() - xs.front());
  MESSAGE("log-log slope " << slope);
  CHECK(slope < 2.0);
}
