#include "apportion/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "apportion/error.hpp"

namespace apportion {
namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(Errc::length_mismatch,
                "lengths " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

void require_p(int p) {
  if (p != 1 && p != 2) throw Error(Errc::invalid_config, "p must be 1 or 2");
}

// Numerators of S_i - S*T_i/T over the common denominator T.
std::vector<i128> deviations(const AllocationVector& alloc, const IdealAllocation& ideal) {
  require_same_length(alloc.size(), ideal.size());
  std::vector<i128> out(alloc.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<i128>(alloc[i]) * ideal.denominator - ideal.numerators[i];
  }
  return out;
}

u128 magnitude(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

std::optional<ExactDistance> try_exact(const std::vector<i128>& dev, Units denominator) {
  ExactDistance d;
  d.denominator = denominator;
  for (const i128 v : dev) {
    const u128 m = magnitude(v);
    u128 sq;
    if (__builtin_add_overflow(d.l1_numerator, m, &d.l1_numerator)) return std::nullopt;
    if (__builtin_mul_overflow(m, m, &sq)) return std::nullopt;
    if (__builtin_add_overflow(d.l2_squared_numerator, sq, &d.l2_squared_numerator)) {
      return std::nullopt;
    }
  }
  return d;
}

struct WideDistance {
  long double l1_numerator = 0;
  long double l2_squared_numerator = 0;
};

WideDistance wide_distance(const std::vector<i128>& dev) {
  WideDistance d;
  for (const i128 v : dev) {
    const auto m = static_cast<long double>(magnitude(v));
    d.l1_numerator += m;
    d.l2_squared_numerator += m * m;
  }
  return d;
}

// Both numerators of one allocation, exact when possible.
struct Numerators {
  long double l1;
  long double l2_squared;
  bool l1_zero;
  bool l2_zero;
};

Numerators numerators_of(const AllocationVector& alloc, const IdealAllocation& ideal) {
  const auto dev = deviations(alloc, ideal);
  if (const auto exact = try_exact(dev, ideal.denominator)) {
    return {static_cast<long double>(exact->l1_numerator),
            static_cast<long double>(exact->l2_squared_numerator), exact->l1_numerator == 0,
            exact->l2_squared_numerator == 0};
  }
  const WideDistance w = wide_distance(dev);
  return {w.l1_numerator, w.l2_squared_numerator, w.l1_numerator == 0,
          w.l2_squared_numerator == 0};
}

}  // namespace

long double IdealAllocation::value(std::size_t i) const {
  return static_cast<long double>(numerators.at(i)) / static_cast<long double>(denominator);
}

std::string IdealAllocation::display(std::size_t i, int places) const {
  return to_fixed(numerators.at(i), denominator, places);
}

IdealAllocation ideal_allocation(const AllocationProblem& problem) {
  IdealAllocation ideal;
  ideal.denominator = problem.total();
  ideal.numerators.reserve(problem.n());
  for (const Units t : problem.sizes()) {
    ideal.numerators.push_back(static_cast<i128>(problem.incoming()) * t);
  }
  return ideal;
}

ExactDistance exact_distance(const AllocationVector& alloc, const IdealAllocation& ideal) {
  if (auto d = try_exact(deviations(alloc, ideal), ideal.denominator)) return *d;
  throw Error(Errc::overflow, "squared distance exceeds 128 bits");
}

double lp_distance(const AllocationVector& alloc, const IdealAllocation& ideal, int p) {
  require_p(p);
  const Numerators num = numerators_of(alloc, ideal);
  const auto den = static_cast<long double>(ideal.denominator);
  if (p == 1) return static_cast<double>(num.l1 / den);
  return static_cast<double>(std::sqrt(num.l2_squared) / den);
}

DistancePair distances(const AllocationVector& alloc, const IdealAllocation& ideal) {
  const Numerators num = numerators_of(alloc, ideal);
  const auto den = static_cast<long double>(ideal.denominator);
  return {static_cast<double>(num.l1 / den), static_cast<double>(std::sqrt(num.l2_squared) / den)};
}

RhoPair rho_ratios(const AllocationVector& alloc, const AllocationVector& hamilton_alloc,
                   const IdealAllocation& ideal) {
  const Numerators h = numerators_of(hamilton_alloc, ideal);
  if (h.l1_zero || h.l2_zero) {
    throw Error(Errc::undefined_rho, "Hamilton allocation coincides with the ideal");
  }
  const Numerators a = numerators_of(alloc, ideal);
  return {static_cast<double>(a.l1 / h.l1),
          static_cast<double>(std::sqrt(a.l2_squared / h.l2_squared))};
}

Units QuotaReport::min_extent() const noexcept {
  return per_order.empty() ? 0 : std::min<Units>(0, *std::min_element(per_order.begin(), per_order.end()));
}

Units QuotaReport::max_extent() const noexcept {
  return per_order.empty() ? 0 : std::max<Units>(0, *std::max_element(per_order.begin(), per_order.end()));
}

QuotaReport quota_report(const AllocationProblem& problem, const AllocationVector& alloc) {
  require_same_length(problem.n(), alloc.size());
  QuotaReport report;
  report.per_order.resize(problem.n());
  const auto total = static_cast<u128>(problem.total());
  for (std::size_t i = 0; i < problem.n(); ++i) {
    const u128 share = static_cast<u128>(problem.incoming()) * static_cast<u128>(problem.size(i));
    const auto floor = static_cast<Units>(share / total);
    const Units ceil = floor + (share % total != 0 ? 1 : 0);
    Units extent = 0;
    if (alloc[i] < floor) {
      extent = alloc[i] - floor;
    } else if (alloc[i] > ceil) {
      extent = alloc[i] - ceil;
    }
    report.per_order[i] = extent;
    report.violated = report.violated || extent != 0;
  }
  return report;
}

std::optional<ParadoxWitness> detect_alabama(const MethodSpec& method,
                                             const std::vector<Units>& sizes, Units s_before,
                                             Units s_after) {
  if (s_after <= s_before) {
    throw Error(Errc::invalid_problem, "Alabama check needs s_after > s_before");
  }
  const AllocationVector before = allocate(AllocationProblem(sizes, s_before), method);
  const AllocationVector after = allocate(AllocationProblem(sizes, s_after), method);
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (after[j] < before[j]) {
      return ParadoxWitness{ParadoxKind::alabama, {j}, sizes, sizes, s_before, s_after,
                            before, after};
    }
  }
  return std::nullopt;
}

std::optional<ParadoxWitness> detect_population(const MethodSpec& method,
                                                const std::vector<Units>& sizes_before,
                                                const std::vector<Units>& sizes_after, Units s) {
  require_same_length(sizes_before.size(), sizes_after.size());
  const AllocationVector before = allocate(AllocationProblem(sizes_before, s), method);
  const AllocationVector after = allocate(AllocationProblem(sizes_after, s), method);
  const std::size_t n = sizes_before.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(after[i] < before[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !(after[j] > before[j])) continue;
      // T'_i / T'_j > T_i / T_j
      const i128 lhs = static_cast<i128>(sizes_after[i]) * sizes_before[j];
      const i128 rhs = static_cast<i128>(sizes_before[i]) * sizes_after[j];
      if (lhs > rhs) {
        return ParadoxWitness{ParadoxKind::population, {i, j}, sizes_before, sizes_after, s, s,
                              before, after};
      }
    }
  }
  return std::nullopt;
}

AllocationVector brute_force_optimal(const AllocationProblem& problem, int p) {
  require_p(p);
  std::uint64_t states = 1;
  for (const Units t : problem.sizes()) {
    if (__builtin_mul_overflow(states, static_cast<std::uint64_t>(t) + 1, &states) ||
        states > kBruteForceBudget) {
      throw Error(Errc::budget_exceeded, "enumeration exceeds " +
                                             std::to_string(kBruteForceBudget) + " states");
    }
  }

  const auto sizes = problem.sizes();
  const std::size_t n = sizes.size();
  const IdealAllocation ideal = ideal_allocation(problem);
  std::vector<Units> suffix_capacity(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix_capacity[i] = suffix_capacity[i + 1] + sizes[i];

  AllocationVector current{std::vector<Units>(n, 0)};
  AllocationVector best;
  u128 best_score = 0;
  bool found = false;

  // Depth-first in lexicographic order; a strict improvement test keeps the
  // lexicographically smallest minimiser.
  auto visit = [&](auto&& self, std::size_t i, Units remaining) -> void {
    if (i == n) {
      const ExactDistance d = exact_distance(current, ideal);
      const u128 score = p == 1 ? d.l1_numerator : d.l2_squared_numerator;
      if (!found || score < best_score) {
        found = true;
        best_score = score;
        best = current;
      }
      return;
    }
    const Units lo = std::max<Units>(0, remaining - suffix_capacity[i + 1]);
    const Units hi = std::min(sizes[i], remaining);
    for (Units v = lo; v <= hi; ++v) {
      current.fills[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  visit(visit, 0, problem.incoming());
  return best;
}

}  // namespace apportion
