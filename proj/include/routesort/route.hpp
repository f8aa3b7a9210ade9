#pragma once

// Executing, verifying and exactly solving permutation-routing instances.
//
// A routing step is a matching; all matched pairs swap their pebbles at once.
// rt(G, p) is the fewest steps that move the pebble on every vertex i to p(i).

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "routesort/graph.hpp"

namespace routesort {

struct RoutingPlan {
  std::vector<Matching> steps;

  int length() const { return static_cast<int>(steps.size()); }
  friend bool operator==(const RoutingPlan&, const RoutingPlan&) = default;
};

enum class RoutingStatus : std::uint8_t { kSolved, kExceededCap, kInfeasible };

struct RoutingOutcome {
  RoutingStatus status = RoutingStatus::kInfeasible;
  int steps = 0;  // meaningful only when solved
  std::optional<RoutingPlan> plan;
};

/// Runs the plan from the initial configuration (pebble i on vertex i) and
/// checks that pebble i ends on p(i). Throws GraphError on an invalid step.
bool verify_plan(const Graph& g, const Permutation& p, const RoutingPlan& plan);

/// The permutation a plan realizes: pebble i ends on result(i).
Permutation realized_permutation(const Graph& g, const RoutingPlan& plan);

/// Breadth-first search over pebble configurations, one transition per
/// matching of g. Finds the minimum number of steps if it is at most `cap`.
/// Supports up to 16 vertices.
RoutingOutcome rt_exact(const Graph& g, const Permutation& p, int cap);

/// Distance of every configuration from the identity configuration, indexed by
/// permutation rank. Because matchings are involutions the configuration graph
/// is undirected, so the entry for p^-1 is rt(g, p).
class RoutingTimeTable {
 public:
  static constexpr int kMaxOrder = 10;

  RoutingTimeTable(int n, std::vector<std::int8_t> dist) : n_(n), dist_(std::move(dist)) {}

  int order() const { return n_; }
  /// -1 if p is not reachable (disconnected graph).
  int routing_time(const Permutation& p) const;
  int max_distance() const;
  const std::vector<std::int8_t>& raw() const { return dist_; }

 private:
  int n_;
  std::vector<std::int8_t> dist_;
};

/// Lehmer-code rank of a permutation of 0..n-1, and its inverse.
std::uint32_t permutation_rank(std::span<const int> perm);
void permutation_unrank(std::uint32_t rank, std::span<int> out);
std::uint64_t factorial(int n);

/// Serial reference: one queue-driven BFS from the identity configuration.
RoutingTimeTable routing_time_table(const Graph& g);
/// Level-synchronous BFS with the frontier expanded by OpenMP threads.
RoutingTimeTable routing_time_table_parallel(const Graph& g);

struct WorstCase {
  int value = 0;
  Permutation witness;
};

/// rt(G) via a single backward BFS. Throws GraphError when g is disconnected,
/// has more than RoutingTimeTable::kMaxOrder vertices, or rt(G) > cap.
WorstCase rt_worst_case(const Graph& g, int cap = std::numeric_limits<int>::max(),
                        bool parallel = true);

struct BoundedSearchOptions {
  // Vertices that take part in no swap at any step.
  std::vector<Vertex> idle;
};

/// Depth-first search for a plan of at most k steps. Each pebble chooses a
/// walk of exactly k moves (staying put counts as a move) whose remaining
/// distance to its destination never exceeds the remaining steps; walks are
/// assigned pebble by pebble with forward checking of the swap constraints.
/// Returns a verifying plan with empty steps removed, or nullopt.
std::optional<RoutingPlan> rt_at_most_k(const Graph& g, const Permutation& p, int k,
                                        const BoundedSearchOptions& opts = {});

/// Enumerates every k-step plan (empty steps included, so each plan has
/// exactly k entries). `fn` returns false to stop. Returns the number of
/// plans reported.
std::size_t for_each_plan_within(const Graph& g, const Permutation& p, int k,
                                 const BoundedSearchOptions& opts,
                                 const std::function<bool(const RoutingPlan&)>& fn);

/// Routes any permutation on a tree with recursive centroid splitting: first
/// every pebble is moved into the component of its destination, then the
/// components are routed in parallel. Throws GraphError if t is not a tree.
RoutingPlan route_tree(const Graph& t, const Permutation& p);

/// Breadth-first spanning tree rooted at vertex 0.
Graph spanning_tree(const Graph& g);

}  // namespace routesort
