#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "apportion/problem.hpp"
#include "apportion/rational.hpp"

namespace apportion {

enum class ProRataVariant { plain, cme };
enum class Quota { hare, droop };
enum class DivisorRule { jd, ws, adam, danish, dean, hh };

struct ProRata {
  ProRataVariant variant = ProRataVariant::plain;
  friend bool operator==(const ProRata&, const ProRata&) = default;
};
struct LargestRemainder {
  Quota quota = Quota::hare;
  friend bool operator==(const LargestRemainder&, const LargestRemainder&) = default;
};
struct HighestAverages {
  DivisorRule rule = DivisorRule::jd;
  friend bool operator==(const HighestAverages&, const HighestAverages&) = default;
};
struct Rss {
  std::uint64_t seed = 0;
  friend bool operator==(const Rss&, const Rss&) = default;
};

using MethodSpec = std::variant<ProRata, LargestRemainder, HighestAverages, Rss>;

/// Flag names: prorata, prorata-cme, hamilton, droop, jd, ws, adam, danish,
/// dean, hh, rss. `rss` takes `rss_seed`. Throws Error(ParseError).
MethodSpec parse_method(std::string_view name, std::uint64_t rss_seed = 0);
std::string method_name(const MethodSpec& method);

/// Methods guaranteed to keep every fill within its order's size.
bool respects_capacity(const MethodSpec& method) noexcept;

/// Rules with f(0) = 0 that must seed one unit per order.
bool needs_unit_seed(DivisorRule rule) noexcept;

AllocationVector pro_rata(const AllocationProblem& problem,
                          ProRataVariant variant = ProRataVariant::plain);

/// Hare: quota T/S. Droop: quota 1 + floor(T/(1+S)); throws DroopInfeasible
/// when fewer orders have a positive remainder than there are leftover units.
AllocationVector largest_remainder(const AllocationProblem& problem, Quota quota);

/// Priority of an order of `size` already holding `held` units under `rule`:
/// size/f(held), or its square for HH. Exposed for tests and the bench.
Ratio divisor_priority(DivisorRule rule, Units size, Units held) noexcept;

/// Sequential argmax over size/f(held) using an IndexedMaxQueue. Orders that
/// reach their size leave the pool. Throws PositivityInfeasible when the rule
/// needs a unit seed and S < n.
AllocationVector highest_averages(const AllocationProblem& problem, DivisorRule rule);

struct RssAllocation {
  AllocationVector allocation;
  /// Orders whose fill exceeds their size.
  std::vector<std::size_t> over_capacity;
  std::uint64_t seed = 0;
};

/// S independent draws with P(i) = T_i / T, one 64-bit draw per unit.
RssAllocation rss(const AllocationProblem& problem, std::uint64_t seed);

/// Dispatches to the method. RSS returns its fills without the capacity flag.
AllocationVector allocate(const AllocationProblem& problem, const MethodSpec& method);

}  // namespace apportion
