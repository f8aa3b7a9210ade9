#pragma once

// Polynomial-time decision of rt(G, p) <= 2.
//
// A two-step routing moves every nontrivial cycle of p either on its own,
// using edges inside the cycle, or together with one other cycle of the same
// length, using only edges between the two. The cycles therefore form a graph
// with loops, and p routes in two steps iff that graph has a perfect matching
// in which loops may cover their vertex.

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "routesort/graph.hpp"
#include "routesort/route.hpp"

namespace routesort {

/// Rotation of a cycle of `length` positions as two reflections: the first
/// step pairs x with shift - x, the second pairs x with shift + 1 - x (all mod
/// length), so position x advances to x + 1.
struct CliqueScheme {
  int length = 0;
  int shift = 0;
  int wrap = 0;  // floor((length - j + i - 1) / 2) for the anchor (i, j)
  std::vector<std::pair<int, int>> first;
  std::vector<std::pair<int, int>> second;

  /// Number of distinct position pairs used by both steps.
  int edge_count() const { return static_cast<int>(first.size() + second.size()); }
};

/// Scheme whose first step matches cycle positions i and j.
/// Throws std::invalid_argument unless 0 <= i < j < length.
CliqueScheme clique_two_step_scheme(int length, int i, int j);
CliqueScheme scheme_for_shift(int length, int shift);

struct TwoStepWitness {
  Matching first;
  Matching second;
};

struct RoutableCycle {
  CliqueScheme scheme;
  TwoStepWitness witness;
};

/// Counts, in one pass over the edges of G[cycle], how many edges each of the
/// |cycle| schemes has present, and returns the first complete scheme.
std::optional<RoutableCycle> individually_routable(const Graph& g, std::span<const Vertex> cycle);

struct PairedScheme {
  int offset = 0;  // first step matches c1[x] with c2[offset - x]
  TwoStepWitness witness;
};

/// Tries every alignment of two equal-length cycles rotating in opposite
/// directions through cross edges only.
std::optional<PairedScheme> mutually_routable(const Graph& g, std::span<const Vertex> c1,
                                              std::span<const Vertex> c2);

struct CycleGraph {
  std::vector<std::vector<Vertex>> cycles;
  std::vector<std::optional<RoutableCycle>> loops;
  std::map<std::pair<int, int>, PairedScheme> edges;  // key (i, j), i < j

  int order() const { return static_cast<int>(cycles.size()); }
  bool has_loop(int i) const { return loops[i].has_value(); }
};

CycleGraph build_cycle_graph(const Graph& g, const Permutation& p);

struct LoopCover {
  std::vector<int> looped;
  std::vector<std::pair<int, int>> paired;
};

/// Covers every vertex by a chosen loop or a chosen edge, if possible.
/// Implemented as a perfect matching on two copies of the graph where each
/// looped vertex is joined to its own copy.
std::optional<LoopCover> loop_perfect_matching(int order, std::span<const char> loops,
                                               std::span<const std::pair<int, int>> edges);
std::optional<LoopCover> loop_perfect_matching(const CycleGraph& cg);

/// Returns a solved outcome with a plan of 0, 1 or 2 steps, or kExceededCap
/// when rt(g, p) > 2. Throws GraphError on a disconnected graph.
RoutingOutcome decide_two_step(const Graph& g, const Permutation& p);

}  // namespace routesort
