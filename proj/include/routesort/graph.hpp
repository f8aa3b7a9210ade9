#pragma once

// Core value types shared by the routing and sorting modules.
//
// Vertices are 0-based internally. Every text format in io.hpp is 1-based.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace routesort {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  // Canonical form has u < v.
  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected simple graph on vertices 0..n-1.
///
/// Neighbor lists and the edge list are kept sorted, which makes every
/// traversal in the library deterministic.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph from_edges(int n, std::span<const Edge> edges);
  static Graph path(int n);
  static Graph cycle(int n);
  static Graph complete(int n);
  static Graph star(int n);  // vertex 0 is the center
  static Graph hypercube(int dim);

  int order() const { return static_cast<int>(adj_.size()); }
  int size() const { return static_cast<int>(edges_.size()); }

  /// Throws GraphError on self-loops, duplicates and out-of-range vertices.
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  bool connected() const;
  bool is_tree() const;

  /// BFS distances from `source`; unreachable vertices get -1.
  std::vector<int> distances_from(Vertex source) const;
  /// All-pairs shortest path lengths, -1 for unreachable pairs.
  std::vector<std::vector<int>> all_distances() const;

  /// Subgraph induced by `keep`; vertex i of the result is keep[i].
  Graph induced(std::span<const Vertex> keep) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
};

/// Destination map: the pebble starting on vertex i must end on dest(i).
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument if `dest` is not a bijection on 0..n-1.
  explicit Permutation(std::vector<Vertex> dest);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(dest_.size()); }
  Vertex operator()(Vertex i) const { return dest_[i]; }
  const std::vector<Vertex>& dest() const { return dest_; }

  Permutation inverse() const;
  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> dest_;
};

struct CycleDecomposition {
  // Each cycle starts at its minimum vertex and maps cycles[k][t] to
  // cycles[k][t+1]; cycles are ordered by minimum vertex.
  std::vector<std::vector<Vertex>> cycles;
  std::vector<Vertex> fixed;
};

CycleDecomposition cycle_decomposition(const Permutation& p);
Permutation recompose(const CycleDecomposition& cd, int n);

/// Disjoint vertex pairs; each pair is stored in canonical (u < v) form.
struct Matching {
  std::vector<Edge> pairs;

  bool empty() const { return pairs.empty(); }
  friend bool operator==(const Matching&, const Matching&) = default;
};

/// Throws GraphError if a pair is not an edge of `g` or a vertex repeats.
void validate_matching(const Graph& g, const Matching& m);
/// Same checks without the edge requirement.
bool is_matching(int n, const Matching& m);

enum class ExchangeMode : std::uint8_t { kDirected, kUndirected };

/// One entry of a directed matching. For kDirected the smaller value lands
/// on `u`; kUndirected swaps unconditionally.
struct Comparator {
  Vertex u = 0;
  Vertex v = 0;
  ExchangeMode mode = ExchangeMode::kDirected;

  friend bool operator==(const Comparator&, const Comparator&) = default;
};

struct DirectedMatching {
  std::vector<Comparator> entries;

  bool empty() const { return entries.empty(); }
  Matching underlying() const;
  friend bool operator==(const DirectedMatching&, const DirectedMatching&) = default;
};

/// at[v] is the pebble currently sitting on vertex v.
struct PebbleConfiguration {
  std::vector<int> at;

  static PebbleConfiguration initial(int n);
  friend bool operator==(const PebbleConfiguration&, const PebbleConfiguration&) = default;
};

/// Swaps the pebbles on every matched pair. Throws GraphError when a pair is
/// not an edge of `g`.
PebbleConfiguration apply_matching(const Graph& g, PebbleConfiguration c, const Matching& m);
/// Unchecked in-place variant for hot loops.
void apply_matching_inplace(std::span<int> at, const Matching& m);

/// Calls `fn` on every matching of `g` exactly once, starting with the empty
/// matching. Order is lexicographic in the index sequence of chosen edges
/// (edges sorted). `fn` returns false to stop early.
void for_each_matching(const Graph& g, const std::function<bool(const Matching&)>& fn);
std::vector<Matching> all_matchings(const Graph& g);

}  // namespace routesort
