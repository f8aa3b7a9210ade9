#pragma once

// Compiles a 3-CNF formula into a routing instance (G, p) with
// rt(G, p) <= 3 iff the formula is satisfiable.
//
// Every gadget routes its own transpositions in exactly three steps, and a
// three-step swap along a path a - x - y - b keeps both inner vertices busy
// in every step. Gadgets interact only through shared port vertices:
//
//   clause    a_C and b_C joined by one path a_C - p - q - b_C per literal;
//             the routing picks one path and occupies its port p.
//   variable  a ring of hexagons a, R1, R2, b, L2, L1 with (a b) transposed;
//             L1 of each hexagon is R1 of the next, so the ring routes all on
//             the right (x true, L2 free) or all on the left (x false, R2
//             free). Literal x uses port L2, literal -x uses port R2.
//   f-chain   squares s_a - u - s_b - v with (s_a s_b) transposed; u is the
//             clause port, v the variable port. If the clause occupies u the
//             square must route through v, which must then be free.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "routesort/graph.hpp"

namespace routesort {

struct Formula {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based variable indices
};

/// DIMACS CNF. Throws ParseError: kMalformed for header or structure
/// problems (including empty clauses), kOversizeClause for more than three
/// literals, kOutOfRange for literals beyond the declared variable count, and
/// kZeroVariable when clauses are declared over zero variables.
Formula parse_cnf(std::string_view text);
std::string format_cnf(const Formula& f);

/// Exhaustive search over assignments (variable_count <= 24).
bool brute_force_satisfiable(const Formula& f);

/// Fragment on vertices 0..order-1 with its transpositions and named ports.
struct GadgetInstance {
  Graph graph;
  std::vector<std::pair<Vertex, Vertex>> transpositions;
  std::map<std::string, Vertex> ports;

  int order() const { return graph.order(); }
  /// Throws std::out_of_range for unknown names.
  Vertex port(const std::string& name) const;
  Permutation permutation() const;
};

/// Terminals "a", "b"; per literal i (1-based) ports "p<i>" (next to a) and
/// "q<i>". Throws std::invalid_argument for an empty clause.
GadgetInstance build_clause_gadget(const std::vector<int>& clause);

/// Smallest l >= 1 with occurrences <= 2^(l+1) - 2.
int variable_levels(int occurrences);

/// 2^(l+1) - 1 hexagons in a ring; hexagon i has "a<i>", "b<i>", "L1_<i>",
/// "L2_<i>", "R1_<i>", "R2_<i>". Literal ports "x<k>" = L2_k and "-x<k>" =
/// R2_k for k = 1 .. 2^(l+1) - 2. Throws std::invalid_argument when
/// occurrences < 1.
GadgetInstance build_variable_gadget(int occurrences);

/// `length` squares; the square k has "sa<k>", "sb<k>" and shares its v
/// corner with the u corner of square k+1. Ports "u" and "v".
/// Throws std::invalid_argument when length < 1.
GadgetInstance build_f_chain(int length = 1);

struct PortRecord {
  int literal = 0;      // signed variable index
  int clause = 0;       // 0-based clause index
  Vertex vertex = 0;    // variable-side port
  Vertex clause_port = 0;
};

struct ReductionOutput {
  Graph graph;
  Permutation perm;
  std::vector<PortRecord> ports;
  int variable_vertices = 0;
  int clause_vertices = 0;
  int chain_vertices = 0;      // fresh vertices only; chain ends are ports
  int connector_vertices = 0;  // paths joining the variable rings
};

/// Variables without occurrences get no gadget. Consecutive variable rings
/// are joined by a path of two fresh vertices between their a0 vertices.
ReductionOutput reduce(const Formula& f, int chain_length = 1);

/// "literal clause vertex" per line, clause and vertex 1-based.
std::string format_port_map(const ReductionOutput& out);
/// Inverse of format_port_map; clause_port is left at -1.
std::vector<PortRecord> parse_port_map(std::string_view text);

}  // namespace routesort
