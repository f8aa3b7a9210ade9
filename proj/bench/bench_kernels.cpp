// Times each OpenMP kernel against its serial reference and checks that both
// give the same answer. The zero-one reference runs one input at a time; the
// OpenMP kernel runs 64 inputs per word, so its speedup includes bit slicing.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "routesort/generators.hpp"
#include "routesort/route.hpp"
#include "routesort/sortnet.hpp"
#include "routesort/tree_sort.hpp"

using namespace routesort;

namespace {

template <class Fn>
double best_of(int reps, Fn&& fn) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

template <class T>
bool row(const char* name, int reps, const std::function<T()>& serial, const std::function<T()>& parallel) {
  T s{}, p{};
  const double ts = best_of(reps, [&] { s = serial(); });
  const double tp = best_of(reps, [&] { p = parallel(); });
  std::printf("%-34s %10.4f %10.4f %7.2fx  %s\n", name, ts, tp, ts / tp, s == p ? "agree" : "DISAGREE");
  return s == p;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial s", "openmp s", "speedup");
  Rng rng(kDefaultSeed);
  bool ok = true;

  const SortingNetwork path22 = odd_even_path_network(22);
  ok &= row<bool>("zero-one, path n=22", 3, [&] { return verify_zero_one_serial(path22); },
            [&] { return verify_zero_one(path22); });
  const SortingNetwork tree20 = odd_even_tree_sort(random_tree(20, rng));
  ok &= row<bool>("zero-one, random tree n=20", 3, [&] { return verify_zero_one_serial(tree20); },
            [&] { return verify_zero_one(tree20); });
  const SortingNetwork tree9 = odd_even_tree_sort(random_tree(9, rng));
  ok &= row<bool>("all permutations, random tree n=9", 3, [&] { return verify_all_permutations_serial(tree9); },
            [&] { return verify_all_permutations(tree9); });
  using Table = std::vector<std::int8_t>;
  const Graph q3 = Graph::hypercube(3);
  ok &= row<Table>("routing table, Q3", 3, [&] { return routing_time_table(q3).raw(); },
                   [&] { return routing_time_table_parallel(q3).raw(); });
  const Graph g9 = random_connected_graph(9, 0.3, rng);
  ok &= row<Table>("routing table, random graph n=9", 2, [&] { return routing_time_table(g9).raw(); },
                   [&] { return routing_time_table_parallel(g9).raw(); });
  return ok ? 0 : 1;
}
