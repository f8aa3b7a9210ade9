#pragma once

// Sorting networks whose comparators are restricted to the edges of a host
// graph, their exhaustive verifiers, and two constructions: odd-even
// transposition on a path and the Cartesian-product network.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "routesort/graph.hpp"
#include "routesort/route.hpp"

namespace routesort {

/// Host graph, ordered stages and the sorted order. `order(v)` is the 0-based
/// rank of the value that must end on vertex v.
///
/// The host is always the union of stage edges, so every host edge is used by
/// some stage.
struct SortingNetwork {
  Graph host;
  std::vector<DirectedMatching> stages;
  Permutation order;

  int order_size() const { return host.order(); }
  int depth() const { return static_cast<int>(stages.size()); }
};

/// Builds a network on n vertices. Empty stages are dropped; throws GraphError
/// if a stage is not a matching.
SortingNetwork make_network(int n, std::vector<DirectedMatching> stages, Permutation order);

template <typename T>
void run_stage(std::span<T> values, const DirectedMatching& stage) {
  for (const Comparator& c : stage.entries) {
    T& a = values[c.u];
    T& b = values[c.v];
    if (c.mode == ExchangeMode::kUndirected || b < a) std::swap(a, b);
  }
}

/// Runs the first `stage_count` stages (all by default).
std::vector<int> run_network(const SortingNetwork& net, std::vector<int> values,
                             std::size_t stage_count = static_cast<std::size_t>(-1));

/// True if `values` is arranged by `order`: values are non-decreasing in rank.
bool is_sorted_by(const Permutation& order, std::span<const int> values);

class VerificationBudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kZeroOneMaxOrder = 28;
inline constexpr int kPermutationMaxOrder = 10;

/// Checks all 2^n binary inputs. Serial reference: one input at a time.
bool verify_zero_one_serial(const SortingNetwork& net, int max_order = kZeroOneMaxOrder);
/// Bit-sliced kernel: 64 inputs per machine word, blocks split across
/// OpenMP threads.
bool verify_zero_one(const SortingNetwork& net, int max_order = kZeroOneMaxOrder);
/// Same kernel restricted to a stage prefix, checked by a caller predicate.
/// For every input block, `check(words)` sees the bit-sliced vertex values
/// after `stage_count` stages and returns a 64-bit mask of failing lanes.
template <typename Check>
bool zero_one_all(const SortingNetwork& net, std::size_t stage_count, Check check);

/// Checks all n! inputs of distinct values 0..n-1.
bool verify_all_permutations_serial(const SortingNetwork& net,
                                    int max_order = kPermutationMaxOrder);
bool verify_all_permutations(const SortingNetwork& net, int max_order = kPermutationMaxOrder);

/// Classical odd-even transposition sort on the path 0-1-...-(n-1): n
/// alternating stages (empty ones dropped), ascending along the path.
SortingNetwork odd_even_path_network(int n);

/// Flips every comparator so the smaller value lands on the other endpoint.
DirectedMatching reversed(const DirectedMatching& stage);

/// Vertex (a, b) of G1 x G2 is stored at a * n2 + b: rows are copies of G2,
/// columns copies of G1.
struct ProductLayout {
  int n1 = 0;
  int n2 = 0;

  int index(Vertex a, Vertex b) const { return a * n2 + b; }
  Vertex row(int idx) const { return idx / n2; }
  Vertex column(int idx) const { return idx % n2; }
  int order() const { return n1 * n2; }
};

struct ProductNetwork {
  SortingNetwork net;
  ProductLayout layout;
  // Stage count at the end of each full stage, one entry per stage of net1.
  std::vector<std::size_t> full_stage_ends;
  // Row pairs (lower, upper) compared at the end of each full stage.
  std::vector<std::vector<std::pair<Vertex, Vertex>>> merged_rows;
};

Graph cartesian_product(const Graph& g1, const Graph& g2);

/// For each stage m of net1: lower rows of m run net2, upper rows run net2
/// reversed, other rows idle, then m is applied across columns. A final half
/// stage sorts every row ascending. Sorted order is row-major by factor rank.
/// Throws std::invalid_argument if a factor fails zero-one verification.
ProductNetwork product_network(const SortingNetwork& net1, const SortingNetwork& net2);

/// The permutation that moves each pebble from net's sorted position to the
/// position `target` assigns to the same rank.
Permutation fixup_permutation(const SortingNetwork& net, const Permutation& target);

/// Appends `fixup` as unconditional-swap stages so the network sorts into
/// `target`. Throws std::invalid_argument if the plan does not route
/// fixup_permutation(net, target) on the host.
SortingNetwork adapt_sorted_order(const SortingNetwork& net, const Permutation& target,
                                  const RoutingPlan& fixup);

}  // namespace routesort

#include "routesort/detail/zero_one_kernel.hpp"
