#include "routesort/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "routesort/route.hpp"
#include "routesort/sat_reduction.hpp"
#include "routesort/sortnet.hpp"
#include "routesort/tree_sort.hpp"
#include "routesort/two_step.hpp"

namespace routesort {

namespace {

using Clock = std::chrono::steady_clock;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded() : std::runtime_error("time budget exceeded") {}
};

struct Context {
  const HarnessOptions& opts;
  Clock::time_point start = Clock::now();

  void check_budget() const {
    if (opts.budget_secs > 0 && std::chrono::duration<double>(Clock::now() - start).count() > opts.budget_secs)
      throw BudgetExceeded();
  }
};

struct Verdict {
  bool passed = false;
  std::string detail;
};

Permutation transposition(int n, Vertex a, Vertex b) {
  std::vector<Vertex> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[i] = i;
  std::swap(d[a], d[b]);
  return Permutation(std::move(d));
}

// Random maximal matching: edges in shuffled order, taken greedily.
Matching random_matching(const Graph& g, Rng& rng) {
  std::vector<Edge> edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
  Matching m;
  for (const Edge& e : edges) {
    if (used[e.u] || used[e.v] || rng() % 4 == 0) continue;
    used[e.u] = used[e.v] = 1;
    m.pairs.push_back(e);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

// 1 ------------------------------------------------------------------------

Verdict two_step_oracle(Context& ctx) {
  long long exhaustive = 0, sampled = 0, positives = 0, mismatches = 0, bad_plans = 0;
  auto check = [&](const Graph& g, const Permutation& p, int truth) {
    const RoutingOutcome out = decide_two_step(g, p);
    const bool yes = out.status == RoutingStatus::kSolved;
    if (yes != (truth <= 2)) ++mismatches;
    if (yes) {
      ++positives;
      if (!out.plan || out.plan->length() > 2 || !verify_plan(g, p, *out.plan)) ++bad_plans;
    }
  };

  for (int n = 1; n <= 5; ++n) {
    for_each_connected_graph(n, [&](const Graph& g) {
      const RoutingTimeTable table = routing_time_table(g);
      std::vector<int> d(static_cast<std::size_t>(n));
      for (std::uint32_t r = 0; r < factorial(n); ++r) {
        permutation_unrank(r, d);
        const Permutation p(std::vector<Vertex>(d.begin(), d.end()));
        check(g, p, table.routing_time(p));
        ++exhaustive;
      }
      ctx.check_budget();
    });
  }

  Rng rng(ctx.opts.seed);
  for (int i = 0; i < 10000; ++i) {
    const int n = 6 + i % 2;
    const double density = std::uniform_real_distribution<double>(0.0, 0.7)(rng);
    const Graph g = random_connected_graph(n, density, rng);
    Permutation p = random_permutation(n, rng);
    if (i % 3 != 0) {
      RoutingPlan plan;
      plan.steps = {random_matching(g, rng), random_matching(g, rng)};
      p = realized_permutation(g, plan);
    }
    const RoutingOutcome exact = rt_exact(g, p, 2);
    check(g, p, exact.status == RoutingStatus::kSolved ? exact.steps : 3);
    ++sampled;
    if (i % 256 == 0) ctx.check_budget();
  }

  std::ostringstream s;
  s << exhaustive << " exhaustive + " << sampled << " sampled instances, " << positives << " two-step, "
    << mismatches << " disagreements, " << bad_plans << " bad plans";
  return {mismatches == 0 && bad_plans == 0, s.str()};
}

// 2-5 ----------------------------------------------------------------------

Verdict q3(Context&) {
  const WorstCase wc = rt_worst_case(Graph::hypercube(3));
  return {wc.value == 4, "rt(Q3) = " + std::to_string(wc.value)};
}

Verdict star(Context&) {
  std::ostringstream s;
  bool ok = true;
  for (int n = 3; n <= 6; ++n) {
    const int got = rt_worst_case(Graph::star(n)).value;
    const int want = 3 * (n - 1) / 2;
    ok = ok && got == want;
    s << (n > 3 ? ", " : "") << "n=" << n << ": " << got << "/" << want;
  }
  return {ok, s.str()};
}

Verdict clique(Context& ctx) {
  bool ok = true;
  std::ostringstream s;
  s << "rt(K_n) for n=3..6:";
  for (int n = 3; n <= 6; ++n) {
    const Graph k = Graph::complete(n);
    const int rt = rt_worst_case(k).value;
    s << ' ' << rt;
    ok = ok && rt <= 2;
    std::vector<int> d(static_cast<std::size_t>(n));
    for (std::uint32_t r = 0; r < factorial(n); ++r) {
      permutation_unrank(r, d);
      const Permutation p(std::vector<Vertex>(d.begin(), d.end()));
      if (decide_two_step(k, p).status != RoutingStatus::kSolved) ok = false;
    }
    ctx.check_budget();
  }
  int non_cliques = 0, slow = 0;
  for (int n = 3; n <= 5; ++n)
    for_each_connected_graph(n, [&](const Graph& g) {
      if (g.size() == n * (n - 1) / 2) return;
      ++non_cliques;
      if (routing_time_table(g).max_distance() >= 3) ++slow;
    });
  ok = ok && slow == non_cliques;
  s << "; " << slow << "/" << non_cliques << " connected non-cliques need 3+";
  return {ok, s.str()};
}

Verdict gadgets(Context&) {
  const int p3 = rt_exact(Graph::path(3), transposition(3, 0, 2), 5).steps;
  const int p4 = rt_exact(Graph::path(4), transposition(4, 0, 3), 5).steps;
  const int hex = rt_exact(Graph::cycle(6), transposition(6, 0, 3), 5).steps;
  std::ostringstream s;
  s << "P3 " << p3 << ", P4 " << p4 << ", hexagon " << hex;
  return {p3 == 3 && p4 == 3 && hex == 3, s.str()};
}

// 6 ------------------------------------------------------------------------

Verdict reduction(Context& ctx) {
  // Clauses over two variables, literal multisets in canonical order.
  std::vector<std::vector<int>> clauses;
  const int lits[] = {1, -1, 2, -2};
  for (int a = 0; a < 4; ++a) {
    clauses.push_back({lits[a]});
    for (int b = a; b < 4; ++b) {
      clauses.push_back({lits[a], lits[b]});
      for (int c = b; c < 4; ++c) clauses.push_back({lits[a], lits[b], lits[c]});
    }
  }
  int formulas = 0, satisfiable = 0, mismatches = 0;
  double slowest = 0;
  for (std::size_t i = 0; i < clauses.size(); ++i)
    for (std::size_t j = i; j <= clauses.size(); ++j) {
      Formula f{2, {clauses[i]}};
      if (j < clauses.size()) f.clauses.push_back(clauses[j]);
      const ReductionOutput r = reduce(f);
      const auto t0 = Clock::now();
      const auto plan = rt_at_most_k(r.graph, r.perm, 3);
      slowest = std::max(slowest, std::chrono::duration<double>(Clock::now() - t0).count());
      const bool sat = brute_force_satisfiable(f);
      if (plan.has_value() != sat || (plan && !verify_plan(r.graph, r.perm, *plan))) ++mismatches;
      satisfiable += sat;
      ++formulas;
      ctx.check_budget();
    }
  char slow[32];
  std::snprintf(slow, sizeof slow, "%.3f", slowest);
  std::ostringstream s;
  s << formulas << " formulas (" << satisfiable << " satisfiable), " << mismatches << " disagreements, slowest "
    << slow << " s";
  return {mismatches == 0, s.str()};
}

// 7-10 ---------------------------------------------------------------------

Verdict path_network(Context&) {
  bool ok = true;
  int over_depth = 0;
  for (int n = 1; n <= 12; ++n) {
    const SortingNetwork net = odd_even_path_network(n);
    ok = ok && verify_zero_one(net);
    if (n <= 7) ok = ok && verify_all_permutations(net);
    if (net.depth() > 2 * n) ++over_depth;
  }
  return {ok && over_depth == 0,
          "n=1..12 zero-one, n<=7 permutations, depth <= 2n violations: " + std::to_string(over_depth)};
}

Verdict product(Context& ctx) {
  int built = 0, failed = 0, depth_mismatch = 0;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      if (a * b > 12) continue;
      const SortingNetwork n1 = odd_even_path_network(a), n2 = odd_even_path_network(b);
      const ProductNetwork pn = product_network(n1, n2);
      const int st1 = n1.depth(), st2 = n2.depth();
      if (pn.net.depth() != st1 * st2 + st1 + st2) ++depth_mismatch;
      if (!verify_zero_one(pn.net)) ++failed;
      ++built;
      ctx.check_budget();
    }
  std::ostringstream s;
  s << built << " path products, " << failed << " unsorted, " << depth_mismatch << " depth mismatches";
  return {failed == 0 && depth_mismatch == 0, s.str()};
}

Verdict tree_sort(Context& ctx) {
  Rng rng(ctx.opts.seed);
  int failed = 0, over_bound = 0, raised_count = 0;
  double worst_ratio = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Graph t = random_tree(n, rng);
    bool raised = false;
    const TreeSortBuild b = build_verified_tree_sort(t, &raised);
    raised_count += raised;
    bool ok = verify_zero_one(b.net);
    if (n <= 7) ok = ok && verify_all_permutations(b.net);
    failed += !ok;
    const double delta = t.max_degree();
    const double scale = std::min(delta * delta * n, static_cast<double>(n) * n);
    const double ratio = b.net.depth() / std::max(scale, 1.0);
    worst_ratio = std::max(worst_ratio, ratio);
    if (b.net.depth() > kTreeSortDepthConstant * scale) ++over_bound;
    ctx.check_budget();
  }
  int thin_stars = 0;
  for (int n = 3; n <= 12; ++n) {
    const SortingNetwork net = odd_even_tree_sort(Graph::star(n));
    if (net.depth() < n * n / 8.0 || !verify_zero_one(net)) ++thin_stars;
  }
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.2f", worst_ratio);
  std::ostringstream s;
  s << "100 random trees: " << failed << " unsorted, " << over_bound << " over c=" << kTreeSortDepthConstant
    << " (max ratio " << ratio << "), slack raised " << raised_count << "x; stars below n^2/8: " << thin_stars;
  return {failed == 0 && over_bound == 0 && thin_stars == 0, s.str()};
}

Verdict order_adaptation(Context& ctx) {
  Rng rng(ctx.opts.seed);
  int failed = 0, too_deep = 0, max_increase = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const Graph t = random_tree(n, rng);
    const SortingNetwork net = odd_even_tree_sort(t);
    const Permutation target = random_permutation(n, rng);
    const RoutingPlan fix = route_tree(spanning_tree(net.host), fixup_permutation(net, target));
    const SortingNetwork adapted = adapt_sorted_order(net, target, fix);
    const int increase = adapted.depth() - net.depth();
    max_increase = std::max(max_increase, increase);
    if (increase > 3 * n) ++too_deep;
    if (!(adapted.order == target) || !verify_zero_one(adapted)) ++failed;
    ctx.check_budget();
  }
  std::ostringstream s;
  s << "100 trees: " << failed << " unsorted, " << too_deep << " over 3n, max increase " << max_increase;
  return {failed == 0 && too_deep == 0, s.str()};
}

struct Suite {
  const char* name;
  Verdict (*run)(Context&);
};

constexpr Suite kSuites[] = {
    {"two-step-oracle", two_step_oracle}, {"q3", q3},
    {"star", star},                       {"clique", clique},
    {"gadgets", gadgets},                 {"reduction", reduction},
    {"path-network", path_network},       {"product", product},
    {"tree-sort-01", tree_sort},          {"order-adaptation", order_adaptation},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Suite& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

std::optional<int> suite_id(std::string_view name) {
  const auto& names = suite_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<int>(it - names.begin()) + 1;
}

CriterionResult run_criterion(int id, const HarnessOptions& opts) {
  if (id < 1 || id > static_cast<int>(std::size(kSuites))) throw std::out_of_range("unknown criterion");
  const Suite& suite = kSuites[id - 1];
  CriterionResult r;
  r.id = id;
  r.suite = suite.name;
  Context ctx{opts};
  try {
    const Verdict v = suite.run(ctx);
    r.passed = v.passed;
    r.detail = v.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - ctx.start).count();
  return r;
}

std::vector<CriterionResult> run_all_criteria(const HarnessOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= static_cast<int>(std::size(kSuites)); ++id) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d %-17s (%.2f s) ", r.passed ? "PASS" : "FAIL", r.id, r.suite.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace routesort
