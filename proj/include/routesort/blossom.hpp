#pragma once

#include <span>
#include <vector>

#include "routesort/graph.hpp"

namespace routesort {

/// Maximum-cardinality matching in a general graph (Edmonds' blossom
/// algorithm, O(V^3)). Returns mate[v], or -1 for unmatched vertices.
std::vector<int> maximum_matching(int n, std::span<const Edge> edges);

}  // namespace routesort
