#include "apportion/bench.hpp"

#include <algorithm>
#include <chrono>

#include "apportion/simgen.hpp"

namespace apportion {

std::vector<Units> bench_sizes(std::size_t n, Units quantum, std::uint64_t seed) {
  Rng rng = iteration_rng(seed, 0);
  return gen_resting_orders(n, quantum, 2.0, rng);
}

BenchResult time_allocation(const AllocationProblem& problem, const MethodSpec& method,
                            std::size_t reps) {
  BenchResult r;
  r.method = method_name(method);
  r.n = problem.n();
  r.incoming = problem.incoming();
  r.total = problem.total();
  volatile Units sink = 0;
  for (std::size_t k = 0; k < std::max<std::size_t>(reps, 1); ++k) {
    const auto start = std::chrono::steady_clock::now();
    const AllocationVector alloc = allocate(problem, method);
    const auto stop = std::chrono::steady_clock::now();
    sink = sink + alloc.fills.front();
    r.samples_ns.push_back(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
  }
  std::vector<std::int64_t> sorted = r.samples_ns;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  r.median_ns = m % 2 == 1 ? sorted[m / 2] : (sorted[m / 2 - 1] + sorted[m / 2]) / 2;
  return r;
}

}  // namespace apportion
