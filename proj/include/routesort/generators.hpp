#pragma once

// Instance generators for tests, benchmarks and the acceptance suites.

#include <cstdint>
#include <functional>
#include <random>

#include "routesort/graph.hpp"

namespace routesort {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Uniform labeled tree via a random Pruefer sequence.
Graph random_tree(int n, Rng& rng);
/// Random spanning tree plus each remaining pair independently with
/// probability `extra`.
Graph random_connected_graph(int n, double extra, Rng& rng);
Permutation random_permutation(int n, Rng& rng);

/// Visits every connected labeled graph on n vertices (n <= 6).
void for_each_connected_graph(int n, const std::function<void(const Graph&)>& fn);

}  // namespace routesort
