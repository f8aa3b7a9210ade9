#include <filesystem>
#include <random>

#include "doctest.h"
#include "routesort/generators.hpp"
#include "routesort/io.hpp"
#include "routesort/sat_reduction.hpp"
#include "routesort/tree_sort.hpp"

using namespace routesort;

namespace {

ParseErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("no parse error");
  return ParseErrorKind::kMalformed;
}

}  // namespace

TEST_CASE("graph parsing") {
  CHECK(parse_graph("3 2\n1 2\n2 3") == Graph::path(3));
  CHECK(parse_graph("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n") == Graph::complete(4));
  CHECK(parse_graph("1 0\n").order() == 1);
  CHECK(parse_graph("3 1\r\n1 3\r\n").has_edge(0, 2));

  CHECK(kind_of([] { parse_graph("2 1\n1 1"); }) == ParseErrorKind::kSelfLoop);
  CHECK(kind_of([] { parse_graph("2 1\n1 3"); }) == ParseErrorKind::kOutOfRange);
  CHECK(kind_of([] { parse_graph("2 1\n0 1"); }) == ParseErrorKind::kOutOfRange);
  CHECK(kind_of([] { parse_graph("3 2\n1 2\n2 1"); }) == ParseErrorKind::kDuplicateEdge);
  CHECK(kind_of([] { parse_graph("3 2\n1 2 3\n2 3"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_graph("3 2\n1 x\n2 3"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_graph("3 2\n1 2"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_graph("3 1\n1 2\n2 3"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_graph(""); }) == ParseErrorKind::kMalformed);

  for (const auto& [text, line] : {std::pair{"3 2\n1 2\n2 2", 3}, std::pair{"3\n", 1}, std::pair{"3 2\n1 2 3", 2}}) {
    try {
      parse_graph(text);
      FAIL("no parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  }
}

TEST_CASE("permutation parsing") {
  CHECK(parse_permutation("3\n2 3 1\n") == Permutation({1, 2, 0}));
  CHECK(parse_permutation("0\n").size() == 0);
  CHECK(kind_of([] { parse_permutation("3\n2 2 1"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_permutation("3\n2 4 1"); }) == ParseErrorKind::kOutOfRange);
  CHECK(kind_of([] { parse_permutation("3\n2 1"); }) == ParseErrorKind::kMalformed);
}

TEST_CASE("plan parsing") {
  const RoutingPlan plan = parse_plan("steps 3\n1-2 4-3\n\n2-3\n");
  REQUIRE(plan.steps.size() == 3);
  CHECK(plan.steps[0].pairs == std::vector<Edge>{Edge::make(0, 1), Edge::make(2, 3)});
  CHECK(plan.steps[1].empty());
  CHECK(parse_plan("steps 2\n1-2\n").steps.size() == 2);
  CHECK(parse_plan("steps 0\n").steps.empty());
  CHECK(kind_of([] { parse_plan("steps 1\n1-2 2-3"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_plan("steps 1\n1-1"); }) == ParseErrorKind::kSelfLoop);
  CHECK(kind_of([] { parse_plan("steps 1\n1>2"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_plan("step 1\n1-2"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_plan("steps 1\n1-2\n3-4"); }) == ParseErrorKind::kMalformed);
}

TEST_CASE("network parsing") {
  const SortingNetwork net = parse_network("3 2\n1 2 3\n1>2\n2>3 \n");
  CHECK(net.depth() == 2);
  CHECK(net.stages[0].entries[0] == Comparator{0, 1, ExchangeMode::kDirected});
  const SortingNetwork plain = parse_network("2 1\n2 1\n1-2\n");
  CHECK(plain.stages[0].entries[0].mode == ExchangeMode::kUndirected);
  CHECK(plain.order == Permutation({1, 0}));
  CHECK(kind_of([] { parse_network("2 1\n1 2\n\n"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_network("2 1\n1 2\n1>3\n"); }) == ParseErrorKind::kOutOfRange);
  CHECK(kind_of([] { parse_network("3 1\n1 2 3\n1>2 2>3\n"); }) == ParseErrorKind::kMalformed);
  CHECK(kind_of([] { parse_network("2 1\n1 1\n1>2\n"); }) == ParseErrorKind::kMalformed);
}

TEST_CASE("formats round-trip") {
  Rng rng(131);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const Graph g = random_connected_graph(n, 0.3, rng);
    CHECK(parse_graph(format_graph(g)) == g);
    const Permutation p = random_permutation(n, rng);
    CHECK(parse_permutation(format_permutation(p)) == p);
    const RoutingPlan plan = route_tree(spanning_tree(g), p);
    CHECK(parse_plan(format_plan(plan)).steps == plan.steps);
    const SortingNetwork net = odd_even_tree_sort(spanning_tree(g));
    const std::string text = format_network(net);
    const SortingNetwork back = parse_network(text);
    CHECK(back.stages == net.stages);
    CHECK(back.order == net.order);
    CHECK(format_network(back) == text);
  }
  Formula f;
  f.variable_count = 3;
  f.clauses = {{1, -2, 3}, {-1, 2}, {2, 3, -3}};
  const ReductionOutput red = reduce(f);
  const std::string ports = format_port_map(red);
  const auto parsed = parse_port_map(ports);
  REQUIRE(parsed.size() == red.ports.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].literal == red.ports[i].literal);
    CHECK(parsed[i].clause == red.ports[i].clause);
    CHECK(parsed[i].vertex == red.ports[i].vertex);
  }
  CHECK(kind_of([] { parse_port_map("1 2\n"); }) == ParseErrorKind::kMalformed);
}

TEST_CASE("atomic writes") {
  const auto dir = std::filesystem::temp_directory_path() / ("routesort_io_" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.g";
  write_file_atomic(path, "old");
  write_file_atomic(path, format_graph(Graph::path(3)));
  CHECK(parse_graph(read_file(path)) == Graph::path(3));
  CHECK_FALSE(std::filesystem::exists(dir / "out.g.tmp"));
  CHECK_THROWS(read_file(dir / "missing"));
  CHECK_THROWS(write_file_atomic(dir / "no" / "such" / "file", "x"));
  std::filesystem::remove_all(dir);
}
