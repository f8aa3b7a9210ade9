// Runs every acceptance suite and prints one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria (capped at 1).

#include <cstdio>
#include <cstdlib>
#include <string>

#include "routesort/harness.hpp"

int main(int argc, char** argv) {
  routesort::HarnessOptions opts;
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (int id = 1; id <= static_cast<int>(routesort::suite_names().size()); ++id) {
    const auto r = routesort::run_criterion(id, opts);
    std::printf("%s\n", routesort::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(routesort::suite_names().size()) - failed,
              routesort::suite_names().size());
  return failed == 0 ? 0 : 1;
}
