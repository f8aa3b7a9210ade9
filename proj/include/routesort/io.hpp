#pragma once

// Text formats. Every vertex, rank and destination is 1-based on disk.
//
//   graph:        "n m", then m lines "u v"
//   permutation:  "n", then one line with dest[1..n]
//   plan:         "steps t", then t lines of "u-v" tokens (blank line = empty step)
//   network:      "n depth", a line with the rank of each vertex, then depth
//                 lines of "u>v" (smaller value to u) and "u-v" (plain swap)

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "routesort/graph.hpp"
#include "routesort/route.hpp"
#include "routesort/sortnet.hpp"

namespace routesort {

enum class ParseErrorKind {
  kMalformed,
  kOutOfRange,
  kDuplicateEdge,
  kSelfLoop,
  kOversizeClause,
  kZeroVariable,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

Permutation parse_permutation(std::string_view text);
std::string format_permutation(const Permutation& p);

RoutingPlan parse_plan(std::string_view text);
std::string format_plan(const RoutingPlan& plan);

SortingNetwork parse_network(std::string_view text);
std::string format_network(const SortingNetwork& net);

/// Throws std::runtime_error if the file cannot be read.
std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace routesort
