#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apportion/methods.hpp"
#include "apportion/problem.hpp"
#include "apportion/rational.hpp"

namespace apportion {

/// Ideal pro-rata shares S*T_i/T, held as numerators over the common
/// denominator T so that sums and differences stay exact.
struct IdealAllocation {
  std::vector<i128> numerators;
  Units denominator = 1;

  [[nodiscard]] std::size_t size() const noexcept { return numerators.size(); }
  [[nodiscard]] long double value(std::size_t i) const;
  /// Half-up rounding to `places` decimals, for display only.
  [[nodiscard]] std::string display(std::size_t i, int places = 2) const;
};

IdealAllocation ideal_allocation(const AllocationProblem& problem);

/// Exact distances: l1 = l1_numerator / denominator and
/// l2 = sqrt(l2_squared_numerator) / denominator.
struct ExactDistance {
  u128 l1_numerator = 0;
  u128 l2_squared_numerator = 0;
  Units denominator = 1;
};

/// Throws LengthMismatch, or Overflow when the squared sum leaves 128 bits.
ExactDistance exact_distance(const AllocationVector& alloc, const IdealAllocation& ideal);

struct DistancePair {
  double l1 = 0;
  double l2 = 0;
};

/// p must be 1 or 2. Exact where 128 bits suffice, long double otherwise.
double lp_distance(const AllocationVector& alloc, const IdealAllocation& ideal, int p);
DistancePair distances(const AllocationVector& alloc, const IdealAllocation& ideal);

struct RhoPair {
  double rho1 = 0;
  double rho2 = 0;
};

/// Distance of `alloc` relative to the Hamilton allocation. Throws
/// UndefinedRho when either Hamilton distance is zero.
RhoPair rho_ratios(const AllocationVector& alloc, const AllocationVector& hamilton_alloc,
                   const IdealAllocation& ideal);

/// Signed per-order extents: S_i - floor(S T_i/T) when below the floor,
/// S_i - ceil(S T_i/T) when above the ceiling, 0 otherwise.
struct QuotaReport {
  std::vector<Units> per_order;
  bool violated = false;

  [[nodiscard]] Units min_extent() const noexcept;
  [[nodiscard]] Units max_extent() const noexcept;
};

QuotaReport quota_report(const AllocationProblem& problem, const AllocationVector& alloc);

enum class ParadoxKind { alabama, population };

struct ParadoxWitness {
  ParadoxKind kind = ParadoxKind::alabama;
  /// {j} for Alabama, {i, j} for population. Zero-based.
  std::vector<std::size_t> indices;
  std::vector<Units> sizes_before;
  std::vector<Units> sizes_after;
  Units incoming_before = 0;
  Units incoming_after = 0;
  AllocationVector before;
  AllocationVector after;
};

/// Same sizes, S grows from s_before to s_after; reports the first order whose
/// fill shrinks.
std::optional<ParadoxWitness> detect_alabama(const MethodSpec& method,
                                             const std::vector<Units>& sizes, Units s_before,
                                             Units s_after);

/// Same S; reports the lexicographically first pair (i, j) whose size ratio
/// T_i/T_j grew while i's fill fell and j's fill rose.
std::optional<ParadoxWitness> detect_population(const MethodSpec& method,
                                                const std::vector<Units>& sizes_before,
                                                const std::vector<Units>& sizes_after, Units s);

/// Product of (T_i + 1) that brute_force_optimal will accept.
inline constexpr std::uint64_t kBruteForceBudget = 10'000'000;

/// Exhaustive minimiser of the Lp distance (p = 1 or 2) over all feasible
/// allocations; the lexicographically smallest on ties.
AllocationVector brute_force_optimal(const AllocationProblem& problem, int p);

}  // namespace apportion
