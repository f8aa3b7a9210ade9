// Command-line front end. Exit status: 0 success, 1 negative answer,
// 2 usage or input error, 3 internal error.

#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "routesort/generators.hpp"
#include "routesort/harness.hpp"
#include "routesort/io.hpp"
#include "routesort/route.hpp"
#include "routesort/sat_reduction.hpp"
#include "routesort/sortnet.hpp"
#include "routesort/tree_sort.hpp"
#include "routesort/two_step.hpp"

using namespace routesort;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

// Bad input files map to the usage exit code.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Parse>
auto load(const std::string& path, Parse parse) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

Graph load_graph(const std::string& path) { return load(path, parse_graph); }
Permutation load_perm(const std::string& path) { return load(path, parse_permutation); }

void require_same_order(const Graph& g, const Permutation& p) {
  if (g.order() != p.size())
    throw InputError("graph has " + std::to_string(g.order()) + " vertices but the permutation has " +
                     std::to_string(p.size()));
}

void emit(const std::string& path, const std::string& text) {
  if (!path.empty()) write_file_atomic(path, text);
}

struct Args {
  std::string graph, perm, plan, net, cnf, g1, g2, order;
  std::string emit_plan, emit_perm, out_graph, out_perm, out_ports, out_network, report;
  int cap = 12;
  int k = 3;
  bool permutations = false;
  std::string suite;
};

int decide2(const Args& a) {
  const Graph g = load_graph(a.graph);
  const Permutation p = load_perm(a.perm);
  require_same_order(g, p);
  const RoutingOutcome out = decide_two_step(g, p);
  if (out.status != RoutingStatus::kSolved) {
    std::cout << "not routable in two steps\n";
    return kNegative;
  }
  std::cout << "routable in " << out.steps << " step" << (out.steps == 1 ? "" : "s") << '\n';
  emit(a.emit_plan, format_plan(*out.plan));
  return kOk;
}

int rt_exact_cmd(const Args& a) {
  const Graph g = load_graph(a.graph);
  const Permutation p = load_perm(a.perm);
  require_same_order(g, p);
  const RoutingOutcome out = rt_exact(g, p, a.cap);
  if (out.status != RoutingStatus::kSolved) {
    std::cout << (out.status == RoutingStatus::kInfeasible ? "unroutable\n" : "exceeds cap " + std::to_string(a.cap) + "\n");
    return kNegative;
  }
  std::cout << out.steps << '\n';
  emit(a.emit_plan, format_plan(*out.plan));
  return kOk;
}

int rt_bounded(const Args& a) {
  const Graph g = load_graph(a.graph);
  const Permutation p = load_perm(a.perm);
  require_same_order(g, p);
  const auto plan = rt_at_most_k(g, p, a.k);
  if (!plan) {
    std::cout << "no plan within " << a.k << " steps\n";
    return kNegative;
  }
  std::cout << plan->length() << '\n';
  emit(a.emit_plan, format_plan(*plan));
  return kOk;
}

int rt_worst(const Args& a) {
  const WorstCase wc = rt_worst_case(load_graph(a.graph));
  std::cout << wc.value << '\n';
  emit(a.emit_perm, format_permutation(wc.witness));
  return kOk;
}

int route_tree_cmd(const Args& a) {
  const Graph g = load_graph(a.graph);
  const Permutation p = load_perm(a.perm);
  require_same_order(g, p);
  const RoutingPlan plan = route_tree(g.is_tree() ? g : spanning_tree(g), p);
  std::cout << plan.length() << '\n';
  emit(a.emit_plan, format_plan(plan));
  return kOk;
}

int verify_plan_cmd(const Args& a) {
  const Graph g = load_graph(a.graph);
  const Permutation p = load_perm(a.perm);
  require_same_order(g, p);
  const RoutingPlan plan = load(a.plan, parse_plan);
  bool ok = false;
  try {
    ok = verify_plan(g, p, plan);
  } catch (const GraphError& e) {
    std::cout << "invalid: " << e.what() << '\n';
    return kNegative;
  }
  std::cout << (ok ? "valid" : "invalid: wrong final configuration") << " (" << plan.length() << " steps)\n";
  return ok ? kOk : kNegative;
}

int reduce_sat(const Args& a) {
  const Formula f = load(a.cnf, parse_cnf);
  const ReductionOutput out = reduce(f);
  emit(a.out_graph, format_graph(out.graph));
  emit(a.out_perm, format_permutation(out.perm));
  emit(a.out_ports, format_port_map(out));
  std::cout << out.graph.order() << " vertices, " << out.graph.size() << " edges, " << out.ports.size()
            << " ports\n";
  return kOk;
}

int sort_tree(const Args& a) {
  const Graph t = load_graph(a.graph);
  if (!t.is_tree()) throw InputError(a.graph + ": not a tree");
  bool raised = false;
  const TreeSortBuild b = build_verified_tree_sort(t, &raised);
  if (raised) std::cerr << "warning: swap slack raised to " << b.swap_slack << " to pass verification\n";
  emit(a.out_network, format_network(b.net));
  emit(a.report, format_depth_report(depth_accounting(t, b)));
  std::cout << "depth " << b.net.depth() << '\n';
  return kOk;
}

SortingNetwork factor_network(const std::string& path) {
  const Graph g = load_graph(path);
  return odd_even_tree_sort(g.is_tree() ? g : spanning_tree(g));
}

int sort_product(const Args& a) {
  const ProductNetwork pn = product_network(factor_network(a.g1), factor_network(a.g2));
  emit(a.out_network, format_network(pn.net));
  std::cout << "depth " << pn.net.depth() << '\n';
  return kOk;
}

int adapt_order(const Args& a) {
  const SortingNetwork net = load(a.net, parse_network);
  const Permutation target = load_perm(a.order);
  if (target.size() != net.order_size()) throw InputError("target order size does not match the network");
  const RoutingPlan fix = route_tree(spanning_tree(net.host), fixup_permutation(net, target));
  const SortingNetwork adapted = adapt_sorted_order(net, target, fix);
  emit(a.out_network, format_network(adapted));
  std::cout << "depth " << net.depth() << " -> " << adapted.depth() << '\n';
  return kOk;
}

int verify_network(const Args& a) {
  const SortingNetwork net = load(a.net, parse_network);
  bool ok = verify_zero_one(net);
  if (ok && a.permutations) ok = verify_all_permutations(net);
  std::cout << (ok ? "sorts" : "does not sort") << '\n';
  return ok ? kOk : kNegative;
}

int bench(const Args& a, const HarnessOptions& opts) {
  std::vector<int> ids;
  if (a.suite == "all") {
    for (int id = 1; id <= static_cast<int>(suite_names().size()); ++id) ids.push_back(id);
  } else if (const auto id = suite_id(a.suite)) {
    ids.push_back(*id);
  } else {
    std::cerr << "unknown suite '" << a.suite << "'\n";
    return kUsage;
  }
  bool ok = true;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, opts);
    std::cout << format_result(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation routing and sorting networks on graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  HarnessOptions hopts;
  app.add_option("--seed", hopts.seed, "Seed for randomized suites")->capture_default_str();
  app.add_option("--budget-secs", hopts.budget_secs, "Time budget per bench suite (0 = none)");

  auto graph_perm = [&](CLI::App* sub) {
    sub->add_option("--graph", a.graph, "Graph file")->required();
    sub->add_option("--perm", a.perm, "Permutation file")->required();
  };

  auto* d2 = app.add_subcommand("decide2", "Decide whether rt(G, p) <= 2");
  graph_perm(d2);
  d2->add_option("--emit-plan", a.emit_plan, "Write the plan here");

  auto* ex = app.add_subcommand("rt-exact", "Exact routing time by breadth-first search");
  graph_perm(ex);
  ex->add_option("--cap", a.cap, "Largest step count searched")->capture_default_str();
  ex->add_option("--emit-plan", a.emit_plan, "Write the plan here");

  auto* bd = app.add_subcommand("rt-bounded", "Search for a plan of at most K steps");
  graph_perm(bd);
  bd->add_option("--k", a.k, "Step bound")->required();
  bd->add_option("--emit-plan", a.emit_plan, "Write the plan here");

  auto* wc = app.add_subcommand("rt-worst", "Routing number rt(G) (at most 10 vertices)");
  wc->add_option("--graph", a.graph, "Graph file")->required();
  wc->add_option("--emit-perm", a.emit_perm, "Write a slowest permutation here");

  auto* rt = app.add_subcommand("route-tree", "Route on a tree (or a spanning tree of the graph)");
  graph_perm(rt);
  rt->add_option("--emit-plan", a.emit_plan, "Write the plan here");

  auto* vp = app.add_subcommand("verify-plan", "Check a routing plan");
  graph_perm(vp);
  vp->add_option("--plan", a.plan, "Plan file")->required();

  auto* rs = app.add_subcommand("reduce-sat", "Compile a 3-CNF formula into a 3-step routing instance");
  rs->add_option("--cnf", a.cnf, "DIMACS file")->required();
  rs->add_option("--out-graph", a.out_graph, "Graph output");
  rs->add_option("--out-perm", a.out_perm, "Permutation output");
  rs->add_option("--out-ports", a.out_ports, "Port map output");

  auto* st = app.add_subcommand("sort-tree", "Odd-even sorting network on a tree");
  st->add_option("--graph", a.graph, "Tree file")->required();
  st->add_option("--out-network", a.out_network, "Network output");
  st->add_option("--report", a.report, "Depth accounting report");

  auto* sp = app.add_subcommand("sort-product", "Sorting network on the product of two graphs");
  sp->add_option("--g1", a.g1, "First factor")->required();
  sp->add_option("--g2", a.g2, "Second factor")->required();
  sp->add_option("--out-network", a.out_network, "Network output");

  auto* ad = app.add_subcommand("adapt-order", "Retarget a network's sorted order");
  ad->add_option("--net", a.net, "Network file")->required();
  ad->add_option("--order", a.order, "Target order: rank of each vertex, permutation format")->required();
  ad->add_option("--out-network", a.out_network, "Network output");

  auto* vn = app.add_subcommand("verify-network", "Check that a network sorts");
  vn->add_option("--net", a.net, "Network file")->required();
  vn->add_flag("--permutations", a.permutations, "Also run every permutation (n <= 10)");

  auto* bn = app.add_subcommand("bench", "Run an acceptance suite");
  std::string names = "all";
  for (const auto& n : suite_names()) names += ", " + n;
  bn->add_option("suite", a.suite, "One of: " + names)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*d2) return decide2(a);
    if (*ex) return rt_exact_cmd(a);
    if (*bd) return rt_bounded(a);
    if (*wc) return rt_worst(a);
    if (*rt) return route_tree_cmd(a);
    if (*vp) return verify_plan_cmd(a);
    if (*rs) return reduce_sat(a);
    if (*st) return sort_tree(a);
    if (*sp) return sort_product(a);
    if (*ad) return adapt_order(a);
    if (*vn) return verify_network(a);
    if (*bn) return bench(a, hopts);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const VerificationBudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
