#include "apportion/problem.hpp"

#include <numeric>
#include <string>

#include "apportion/error.hpp"

namespace apportion {

AllocationProblem::AllocationProblem(std::vector<Units> sizes, Units incoming)
    : sizes_(std::move(sizes)), incoming_(incoming), total_(0) {
  if (sizes_.empty()) throw Error(Errc::invalid_problem, "no resting orders");
  if (sizes_.size() >= UINT32_MAX) throw Error(Errc::invalid_problem, "too many resting orders");
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] <= 0) {
      throw Error(Errc::invalid_problem, "order " + std::to_string(i) + " has non-positive size");
    }
    if (__builtin_add_overflow(total_, sizes_[i], &total_)) {
      throw Error(Errc::invalid_problem, "total size overflows");
    }
  }
  if (incoming_ <= 0) throw Error(Errc::invalid_problem, "incoming size must be positive");
  if (incoming_ >= total_) {
    throw Error(Errc::invalid_problem, "incoming size " + std::to_string(incoming_) +
                                           " must be below total resting size " +
                                           std::to_string(total_));
  }
}

Units AllocationVector::sum() const noexcept {
  return std::accumulate(fills.begin(), fills.end(), Units{0});
}

}  // namespace apportion
