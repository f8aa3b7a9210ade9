#pragma once

// Odd-even sorting network on an arbitrary tree.
//
// The tree is split at its centroid r into subtrees T_1..T_d (largest
// first). Phase 1 is a bubble sort over the subtrees whose compare-exchange
// is Swap(T_j, T_j+1; r): an oblivious odd-even schedule on the joined tree
// T_j + r + T_j+1 that leaves the smaller values on the T_j side. Afterwards
// T_1 + r holds the n_1 + 1 smallest values and every other T_i holds its
// block. Phase 2 sorts T_1 + r (the maximum climbs to r, then T_1 recurses)
// and every T_i, i >= 2, recursively, with the stage lists overlaid.

#include <cstddef>
#include <string>
#include <vector>

#include "routesort/graph.hpp"
#include "routesort/sortnet.hpp"

namespace routesort {

/// Vertex whose removal leaves components of at most floor(n/2) vertices,
/// smallest label on ties. Throws GraphError if t is not a tree.
Vertex centroid(const Graph& t);

struct Subtree {
  std::vector<Vertex> vertices;  // sorted
  Vertex root = -1;              // neighbor of the parent centroid
  int alpha = 0;                 // max child count over non-leaf vertices, rooted at `root`
  int height = 0;                // levels, the root being level 1

  int size() const { return static_cast<int>(vertices.size()); }
};

struct CentroidDecomposition {
  Vertex root = -1;
  std::vector<Subtree> subtrees;                 // by size descending, then smallest label
  std::vector<CentroidDecomposition> children;  // one per subtree

  int order() const;
  int degree() const { return static_cast<int>(subtrees.size()); }
};

/// Throws GraphError if t is not a tree.
CentroidDecomposition decompose(const Graph& t);

/// Sorted order of the network: r gets rank n_1 (0-based), T_1 is ranked
/// recursively into 0..n_1-1, and T_i (i >= 2) recursively into the block
/// after T_1..T_i-1 and r.
Permutation mp_labeling(const CentroidDecomposition& cd, int n);

struct SwapSchedule {
  std::vector<DirectedMatching> stages;  // odd, even, odd, ...
  int cycle_count = 0;
};

/// Level groups of the joined tree T_i + r + T_j: deepest T_i leaves are
/// group 1, r is group h_i + 1, T_j continues downwards. Stage s (0-based)
/// uses edges between groups (g, g+1) with g of parity s+1; each vertex
/// cycles through its children across the stages where its child edges are
/// active. Every comparator sends the smaller value towards T_i.
SwapSchedule swap_schedule(const Graph& t, const Subtree& ti, Vertex r, const Subtree& tj, int cycles);

/// 2 (n_i + max(alpha_i, alpha_j, 1) * p) + slack.
int swap_cycle_bound(const Subtree& ti, const Subtree& tj, int p, int slack);

inline constexpr int kDefaultSwapSlack = 4;

struct TreeSortOptions {
  int swap_slack = kDefaultSwapSlack;
};

struct SwapRecord {
  int left = 0;   // subtree index j (0-based); the pair is (j, j+1)
  int p = 0;      // exchange cap used for the schedule length
  int beta = 0;
  int cycles = 0;
};

struct PassRecord {
  std::size_t first_stage = 0;
  std::size_t end_stage = 0;
  int cycles = 0;
  std::vector<SwapRecord> swaps;
};

struct TreeSortBuild {
  SortingNetwork net;
  CentroidDecomposition decomposition;
  std::vector<PassRecord> passes;   // top-level phase 1, in execution order
  std::size_t phase1_stages = 0;    // the first phase1_stages stages of net
  int swap_slack = kDefaultSwapSlack;
};

/// Throws GraphError if t is not a tree.
TreeSortBuild build_odd_even_tree_sort(const Graph& t, const TreeSortOptions& opts = {});
SortingNetwork odd_even_tree_sort(const Graph& t);

/// Builds with the default slack and, while zero-one verification fails
/// (n <= kZeroOneMaxOrder), rebuilds with the slack doubled. `raised` is set
/// when the default was not enough.
TreeSortBuild build_verified_tree_sort(const Graph& t, bool* raised = nullptr);

struct DepthReport {
  int n = 0;
  int max_degree = 0;
  int depth = 0;
  int subtrees = 0;
  std::vector<int> pass_cycles;       // c_j per pass
  int phase1_cycles = 0;              // S(n, d; alpha)
  std::vector<int> betas;             // beta_i = max(alpha_i, alpha_i+1)
  long long pass_bound = 0;           // 2 d n + sum(beta) * sum(p)
  double depth_ratio = 0;             // depth / min(Delta^2 n, n^2)
};

DepthReport depth_accounting(const Graph& t, const TreeSortBuild& build);
std::string format_depth_report(const DepthReport& r);

}  // namespace routesort
