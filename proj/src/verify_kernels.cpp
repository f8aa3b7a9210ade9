#include <algorithm>
#include <numeric>

#include "routesort/sortnet.hpp"

namespace routesort {

namespace {

std::vector<Vertex> vertices_by_rank(const SortingNetwork& net) {
  return net.order.inverse().dest();
}

void check_budget(const SortingNetwork& net, int max_order, int hard_limit, const char* what) {
  if (net.order_size() > std::min(max_order, hard_limit))
    throw VerificationBudgetError(std::string(what) + ": network has " +
                                  std::to_string(net.order_size()) + " vertices, budget is " +
                                  std::to_string(std::min(max_order, hard_limit)));
}

}  // namespace

bool verify_zero_one_serial(const SortingNetwork& net, int max_order) {
  check_budget(net, max_order, kZeroOneMaxOrder, "zero-one verification");
  const int n = net.order_size();
  std::vector<int> values(static_cast<std::size_t>(n));
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    for (int v = 0; v < n; ++v) values[v] = static_cast<int>((x >> v) & 1);
    for (const auto& stage : net.stages) run_stage<int>(values, stage);
    if (!is_sorted_by(net.order, values)) return false;
  }
  return true;
}

bool verify_zero_one(const SortingNetwork& net, int max_order) {
  check_budget(net, max_order, kZeroOneMaxOrder, "zero-one verification");
  const auto by_rank = vertices_by_rank(net);
  return zero_one_all(net, net.stages.size(), [&](const std::uint64_t* w) {
    std::uint64_t bad = 0;
    // A lane is unsorted iff some rank holds 1 while the next rank holds 0.
    for (std::size_t r = 0; r + 1 < by_rank.size(); ++r) bad |= w[by_rank[r]] & ~w[by_rank[r + 1]];
    return bad;
  });
}

bool verify_all_permutations_serial(const SortingNetwork& net, int max_order) {
  check_budget(net, max_order, kPermutationMaxOrder, "permutation verification");
  const int n = net.order_size();
  std::vector<int> input(static_cast<std::size_t>(n));
  std::iota(input.begin(), input.end(), 0);
  do {
    auto out = run_network(net, input);
    for (int v = 0; v < n; ++v)
      if (out[v] != net.order(v)) return false;
  } while (std::next_permutation(input.begin(), input.end()));
  return true;
}

bool verify_all_permutations(const SortingNetwork& net, int max_order) {
  check_budget(net, max_order, kPermutationMaxOrder, "permutation verification");
  const int n = net.order_size();
  const auto total = static_cast<std::int64_t>(factorial(n));
  constexpr std::int64_t kChunk = 4096;
  const std::int64_t chunks = (total + kChunk - 1) / kChunk;
  bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (std::int64_t ch = 0; ch < chunks; ++ch) {
    if (!ok) continue;
    std::vector<int> input(static_cast<std::size_t>(n));
    std::vector<int> work(static_cast<std::size_t>(n));
    permutation_unrank(static_cast<std::uint32_t>(ch * kChunk), input);
    const std::int64_t end = std::min(total, (ch + 1) * kChunk);
    bool local = true;
    // Lehmer ranks follow lexicographic order, so next_permutation walks the chunk.
    for (std::int64_t r = ch * kChunk; r < end && local; ++r) {
      work = input;
      for (const auto& stage : net.stages) run_stage<int>(work, stage);
      for (int v = 0; v < n; ++v)
        if (work[v] != net.order(v)) local = false;
      std::next_permutation(input.begin(), input.end());
    }
    ok = ok && local;
  }
  return ok;
}

}  // namespace routesort
