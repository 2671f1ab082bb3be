#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace apportion {

using Units = std::int64_t;

/// n resting orders of sizes T_1..T_n and an incoming counter-party size S,
/// with every T_i >= 1 and 0 < S < T = sum T_i. Construction validates.
class AllocationProblem {
 public:
  /// Throws Error(InvalidProblem) when the invariants do not hold.
  AllocationProblem(std::vector<Units> sizes, Units incoming);

  [[nodiscard]] std::span<const Units> sizes() const noexcept { return sizes_; }
  [[nodiscard]] Units size(std::size_t i) const { return sizes_.at(i); }
  [[nodiscard]] Units incoming() const noexcept { return incoming_; }
  [[nodiscard]] Units total() const noexcept { return total_; }
  [[nodiscard]] std::size_t n() const noexcept { return sizes_.size(); }

 private:
  std::vector<Units> sizes_;
  Units incoming_;
  Units total_;
};

/// Integer fills S_1..S_n, one per resting order, summing to S.
struct AllocationVector {
  std::vector<Units> fills;

  [[nodiscard]] Units sum() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept { return fills.size(); }
  Units operator[](std::size_t i) const { return fills[i]; }

  friend bool operator==(const AllocationVector&, const AllocationVector&) = default;
};

}  // namespace apportion
