#pragma once

// Bit-sliced zero-one evaluation. Input x in [0, 2^n) puts bit v of x on
// vertex v; 64 consecutive inputs share one word per vertex.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

namespace routesort {

namespace detail {

inline constexpr std::array<std::uint64_t, 6> kLanePattern = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

inline void run_stage_sliced(std::uint64_t* w, const DirectedMatching& stage) {
  for (const Comparator& c : stage.entries) {
    const std::uint64_t a = w[c.u];
    const std::uint64_t b = w[c.v];
    if (c.mode == ExchangeMode::kUndirected) {
      w[c.u] = b;
      w[c.v] = a;
    } else {
      w[c.u] = a & b;
      w[c.v] = a | b;
    }
  }
}

}  // namespace detail

template <typename Check>
bool zero_one_all(const SortingNetwork& net, std::size_t stage_count, Check check) {
  const int n = net.order_size();
  if (n > kZeroOneMaxOrder)
    throw VerificationBudgetError("zero-one verification limited to " +
                                  std::to_string(kZeroOneMaxOrder) + " vertices");
  stage_count = std::min(stage_count, net.stages.size());
  const std::uint64_t total = std::uint64_t{1} << n;
  const auto blocks = static_cast<std::int64_t>(std::max<std::uint64_t>(1, total / 64));
  const std::uint64_t valid = total >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << total) - 1;
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    if (!ok) continue;
    std::array<std::uint64_t, kZeroOneMaxOrder> w{};
    const auto base = static_cast<std::uint64_t>(blk) * 64;
    for (int v = 0; v < n; ++v)
      w[v] = v < 6 ? detail::kLanePattern[v] : (((base >> v) & 1) ? ~std::uint64_t{0} : 0);
    for (std::size_t s = 0; s < stage_count; ++s) detail::run_stage_sliced(w.data(), net.stages[s]);
    const std::uint64_t bad = check(static_cast<const std::uint64_t*>(w.data())) & valid;
    ok = ok && bad == 0;
  }
  return ok;
}

}  // namespace routesort
