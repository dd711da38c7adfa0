// Compares the three evaluation paths as the world count grows: the
// recursive oracle (small models only; its belief case multiplies by |W| at
// every nesting level), the serial DP fill, and the OpenMP DP fill.
//
// Usage: bench_checker [formula_nodes] (default 500)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "trustlogic/checker.hpp"
#include "trustlogic/harness.hpp"

using namespace trustlogic;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e100;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int nodes = argc > 1 ? std::atoi(argv[1]) : 500;
  const int n_vars = 50;
  const Dataset vars = [&] {
    std::vector<VarName> names;
    for (int i = 1; i <= n_vars; ++i) names.push_back("x" + std::to_string(i));
    return Dataset(std::move(names));
  }();
  FormulaPtr f = gen_sized_formula(2025, vars, nodes, 10);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#endif
  std::printf("formula: %d nodes over %d variables\n\n", nodes, n_vars);
  std::printf("%8s %12s %12s %12s %8s\n", "worlds", "oracle(ms)", "dp-ser(ms)",
               "dp-omp(ms)", "speedup");

  for (int worlds : {25, 50, 100, 200, 400, 800}) {
    TrustModel m = gen_model_exact(2024, worlds, n_vars, 5, 8);
    EvalPoint pt{m.worlds[0], {}};

    double oracle_ms = -1;
    if (worlds <= 50) {
      // The oracle revisits belief bodies once per world; keep it to sizes
      // where that finishes promptly.
      FormulaPtr small = gen_sized_formula(2026, vars, std::min(nodes, 60), 10);
      oracle_ms = time_ms([&] { (void)eval(m, pt, *small); }, 3);
    }
    const double serial_ms =
        time_ms([&] { (void)check_dp_table(m, {}, *f, false); }, 5);
    const double parallel_ms =
        time_ms([&] { (void)check_dp_table(m, {}, *f, true); }, 5);

    if (oracle_ms >= 0) {
      std::printf("%8d %12.3f %12.3f %12.3f %7.2fx\n", worlds, oracle_ms,
                  serial_ms, parallel_ms, serial_ms / parallel_ms);
    } else {
      std::printf("%8d %12s %12.3f %12.3f %7.2fx\n", worlds, "-", serial_ms,
                  parallel_ms, serial_ms / parallel_ms);
    }
  }
  std::printf("\noracle column uses a 60-node formula; '-' marks sizes where "
              "the oracle is impractical.\n");
  return 0;
}
