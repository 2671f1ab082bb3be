#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apportion/methods.hpp"

namespace apportion {

struct BenchResult {
  std::string method;
  std::size_t n = 0;
  Units incoming = 0;
  Units total = 0;
  std::vector<std::int64_t> samples_ns;
  std::int64_t median_ns = 0;
};

/// Power-law order sizes for benchmark grids.
std::vector<Units> bench_sizes(std::size_t n, Units quantum, std::uint64_t seed);

/// Wall time of `reps` calls to allocate(); median of the samples.
BenchResult time_allocation(const AllocationProblem& problem, const MethodSpec& method,
                            std::size_t reps);

}  // namespace apportion
