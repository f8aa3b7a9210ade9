#include <algorithm>

#include "doctest.h"
#include "routesort/generators.hpp"
#include "routesort/route.hpp"

using namespace routesort;

namespace {

Permutation swap_perm(int n, Vertex a, Vertex b) {
  std::vector<Vertex> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[i] = i;
  std::swap(d[a], d[b]);
  return Permutation(d);
}

Matching pairs(std::initializer_list<Edge> es) { return Matching{std::vector<Edge>(es)}; }

}  // namespace

TEST_CASE("verify_plan") {
  const Graph p3 = Graph::path(3);
  const Permutation ends = swap_perm(3, 0, 2);
  CHECK(verify_plan(p3, Permutation::identity(3), RoutingPlan{}));
  const RoutingPlan three{{pairs({{0, 1}}), pairs({{1, 2}}), pairs({{0, 1}})}};
  CHECK(verify_plan(p3, ends, three));
  for (const Matching& a : all_matchings(p3))
    for (const Matching& b : all_matchings(p3)) CHECK_FALSE(verify_plan(p3, ends, RoutingPlan{{a, b}}));
  CHECK_THROWS_AS(verify_plan(p3, ends, RoutingPlan{{pairs({{0, 2}})}}), GraphError);
}

TEST_CASE("rt_exact small cases") {
  const Graph k3 = Graph::complete(3);
  auto id = rt_exact(k3, Permutation::identity(3), 5);
  CHECK(id.status == RoutingStatus::kSolved);
  CHECK(id.steps == 0);

  auto one = rt_exact(Graph::path(4), swap_perm(4, 1, 2), 5);
  CHECK(one.steps == 1);

  auto p3 = rt_exact(Graph::path(3), swap_perm(3, 0, 2), 5);
  REQUIRE(p3.status == RoutingStatus::kSolved);
  CHECK(p3.steps == 3);
  CHECK(verify_plan(Graph::path(3), swap_perm(3, 0, 2), *p3.plan));

  auto capped = rt_exact(Graph::path(3), swap_perm(3, 0, 2), 2);
  CHECK(capped.status == RoutingStatus::kExceededCap);

  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK(rt_exact(split, swap_perm(4, 1, 2), 5).status == RoutingStatus::kInfeasible);
  CHECK(rt_exact(split, swap_perm(4, 2, 3), 5).steps == 1);
}

TEST_CASE("routing numbers") {
  CHECK(rt_worst_case(Graph::complete(3)).value == 2);
  CHECK(rt_worst_case(Graph::path(2)).value == 1);
  const WorstCase star = rt_worst_case(Graph::star(4));
  CHECK(star.value == 4);
  CHECK(rt_exact(Graph::star(4), star.witness, 10).steps == 4);
  CHECK_THROWS_AS(rt_worst_case(Graph::path(5), 3), GraphError);
}

TEST_CASE("serial and parallel tables agree") {
  Rng rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = random_connected_graph(7, 0.3, rng);
    CHECK(routing_time_table(g).raw() == routing_time_table_parallel(g).raw());
  }
}

TEST_CASE("table matches per-instance search") {
  Rng rng(5);
  const Graph g = random_connected_graph(6, 0.25, rng);
  const RoutingTimeTable table = routing_time_table(g);
  for (int trial = 0; trial < 40; ++trial) {
    const Permutation p = random_permutation(6, rng);
    const auto out = rt_exact(g, p, 20);
    REQUIRE(out.status == RoutingStatus::kSolved);
    CHECK(out.steps == table.routing_time(p));
    CHECK(verify_plan(g, p, *out.plan));
  }
}

TEST_CASE("rank and unrank round-trip") {
  std::vector<int> perm(6);
  for (std::uint32_t r = 0; r < factorial(6); r += 7) {
    permutation_unrank(r, perm);
    CHECK(permutation_rank(perm) == r);
  }
}

TEST_CASE("bounded search agrees with exact search") {
  CHECK_FALSE(rt_at_most_k(Graph::path(3), swap_perm(3, 0, 2), 2));
  const auto plan = rt_at_most_k(Graph::path(3), swap_perm(3, 0, 2), 3);
  REQUIRE(plan);
  CHECK(plan->length() == 3);
  CHECK(rt_at_most_k(Graph::cycle(6), swap_perm(6, 0, 3), 3));

  for (int n = 2; n <= 4; ++n)
    for_each_connected_graph(n, [&](const Graph& g) {
      const RoutingTimeTable table = routing_time_table(g);
      std::vector<int> d(static_cast<std::size_t>(n));
      for (std::uint32_t r = 0; r < factorial(n); ++r) {
        permutation_unrank(r, d);
        const Permutation p(d);
        const int rt = table.routing_time(p);
        const auto hit = rt_at_most_k(g, p, rt);
        REQUIRE(hit);
        CHECK(verify_plan(g, p, *hit));
        if (rt > 0) CHECK_FALSE(rt_at_most_k(g, p, rt - 1));
      }
    });
}

TEST_CASE("bounded search on sampled 5- and 6-vertex graphs") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + trial % 2;
    const Graph g = random_connected_graph(n, 0.3, rng);
    const Permutation p = random_permutation(n, rng);
    const int rt = rt_exact(g, p, 30).steps;
    CHECK(rt_at_most_k(g, p, rt));
    if (rt > 0) CHECK_FALSE(rt_at_most_k(g, p, rt - 1));
  }
}

TEST_CASE("plan enumeration counts every matching sequence") {
  // On P3 every pair of matchings realizes some permutation; summing plan
  // counts over all targets gives 3^2 sequences.
  const Graph p3 = Graph::path(3);
  std::size_t total = 0;
  std::vector<int> d(3);
  for (std::uint32_t r = 0; r < 6; ++r) {
    permutation_unrank(r, d);
    total += for_each_plan_within(p3, Permutation(d), 2, {}, [](const RoutingPlan&) { return true; });
  }
  CHECK(total == 9);

  std::size_t verified = 0;
  const Permutation rot = Permutation({1, 2, 0});
  for_each_plan_within(Graph::complete(3), rot, 2, {}, [&](const RoutingPlan& plan) {
    verified += verify_plan(Graph::complete(3), rot, plan) ? 1 : 0;
    return true;
  });
  CHECK(verified == 3);
}

TEST_CASE("idle vertices are never matched") {
  // On C4 the antipodal swap (0 2) routes in 3 steps; pinning 1 forces the
  // route through 3.
  const Graph c4 = Graph::cycle(4);
  BoundedSearchOptions opts;
  opts.idle = {1};
  std::size_t plans = for_each_plan_within(c4, swap_perm(4, 0, 2), 3, opts, [&](const RoutingPlan& plan) {
    for (const Matching& m : plan.steps)
      for (const Edge& e : m.pairs) CHECK((e.u != 1 && e.v != 1));
    return true;
  });
  CHECK(plans > 0);
}

TEST_CASE("relabeling invariance") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_connected_graph(6, 0.3, rng);
    const Permutation p = random_permutation(6, rng);
    const Permutation s = random_permutation(6, rng);
    Graph h(6);
    for (const Edge& e : g.edges()) h.add_edge(s(e.u), s(e.v));
    CHECK(rt_exact(g, p, 30).steps == rt_exact(h, s * p * s.inverse(), 30).steps);
  }
}

TEST_CASE("tree routing") {
  const Graph p3 = Graph::path(3);
  CHECK(route_tree(p3, Permutation::identity(3)).length() == 0);
  const RoutingPlan ends = route_tree(p3, swap_perm(3, 0, 2));
  CHECK(verify_plan(p3, swap_perm(3, 0, 2), ends));
  CHECK(ends.length() <= 9);
  CHECK_THROWS_AS(route_tree(Graph::cycle(4), Permutation::identity(4)), GraphError);

  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 199);
    const Graph t = random_tree(n, rng);
    const Permutation p = random_permutation(n, rng);
    const RoutingPlan plan = route_tree(t, p);
    CHECK(verify_plan(t, p, plan));
    CHECK(plan.length() <= 3 * n);
  }
  for (int n = 2; n <= 60; ++n) {
    const Graph star = Graph::star(n);
    const Permutation p = random_permutation(n, rng);
    const RoutingPlan plan = route_tree(star, p);
    CHECK(verify_plan(star, p, plan));
    CHECK(plan.length() <= 3 * n);
  }
}

TEST_CASE("tree routing never beats the optimum") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph t = random_tree(6, rng);
    const Permutation p = random_permutation(6, rng);
    CHECK(rt_exact(t, p, 30).steps <= route_tree(t, p).length());
  }
}

TEST_CASE("spanning tree") {
  Rng rng(37);
  const Graph g = random_connected_graph(12, 0.4, rng);
  const Graph t = spanning_tree(g);
  CHECK(t.is_tree());
  for (const Edge& e : t.edges()) CHECK(g.has_edge(e.u, e.v));
}
