#include "apportion/methods.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <random>
#include <string>

#include "apportion/error.hpp"
#include "apportion/indexed_max_queue.hpp"

namespace apportion {
namespace {

struct Share {
  Units quotient;
  Units remainder;
};

// floor(a*b/c) and (a*b) mod c for non-negative a, b and positive c.
Share scaled_share(Units a, Units b, Units c) {
  std::uint64_t product;
  if (!__builtin_mul_overflow(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
                              &product)) {
    const auto d = static_cast<std::uint64_t>(c);
    return {static_cast<Units>(product / d), static_cast<Units>(product % d)};
  }
  const u128 wide = static_cast<u128>(a) * static_cast<u128>(b);
  const auto d = static_cast<u128>(c);
  return {static_cast<Units>(wide / d), static_cast<Units>(wide % d)};
}

AllocationVector plain_pro_rata(const AllocationProblem& problem) {
  const auto sizes = problem.sizes();
  AllocationVector out{std::vector<Units>(sizes.size())};
  std::vector<bool> exact(sizes.size());
  Units assigned = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const Share share = scaled_share(problem.incoming(), sizes[i], problem.total());
    out.fills[i] = share.quotient;
    exact[i] = share.remainder == 0;
    assigned += share.quotient;
  }
  // Leftover is the sum of the fractional parts, so more than `leftover`
  // orders have one. Orders with an exact share are passed over; a unit
  // there would land above the ceiling.
  Units leftover = problem.incoming() - assigned;
  for (std::size_t i = 0; leftover > 0; ++i) {
    if (exact[i]) continue;
    ++out.fills[i];
    --leftover;
  }
  return out;
}

AllocationVector cme_pro_rata(const AllocationProblem& problem) {
  const auto sizes = problem.sizes();
  AllocationVector out{std::vector<Units>(sizes.size())};
  Units assigned = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Units first = scaled_share(problem.incoming(), sizes[i], problem.total()).quotient;
    if (first == 1) first = 0;
    out.fills[i] = first;
    assigned += first;
  }
  Units leftover = problem.incoming() - assigned;
  // Terminates because S < T leaves spare capacity on every pass.
  while (leftover > 0) {
    for (std::size_t i = 0; i < sizes.size() && leftover > 0; ++i) {
      if (out.fills[i] < sizes[i]) {
        ++out.fills[i];
        --leftover;
      }
    }
  }
  return out;
}

struct Reversed {
  std::strong_ordering operator()(Units a, Units b) const noexcept { return b <=> a; }
};

// Hands one unit each to the `leftover` largest remainders. Remainders are
// numerators over a common denominator, so they compare as plain integers.
// When more than half the orders get a unit, the queue instead peels off the
// n - leftover losers; reversing item numbering keeps the lower-index
// tie-break, so both routes select the same set.
void award_largest_remainders(std::vector<Units> remainders, Units leftover,
                              AllocationVector& out) {
  if (leftover == 0) return;
  const std::size_t n = remainders.size();
  const auto winners = static_cast<std::size_t>(leftover);
  if (2 * winners <= n) {
    IndexedMaxQueue<Units> queue(std::move(remainders));
    for (std::size_t k = 0; k < winners; ++k) ++out.fills[queue.pop()];
    return;
  }
  std::reverse(remainders.begin(), remainders.end());
  IndexedMaxQueue<Units, Reversed> losers(std::move(remainders));
  std::vector<bool> lost(n, false);
  for (std::size_t k = winners; k < n; ++k) lost[n - 1 - losers.pop()] = true;
  for (std::size_t i = 0; i < n; ++i) out.fills[i] += lost[i] ? 0 : 1;
}

AllocationVector hare(const AllocationProblem& problem) {
  const auto sizes = problem.sizes();
  AllocationVector out{std::vector<Units>(sizes.size())};
  std::vector<Units> remainders(sizes.size());
  Units assigned = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const Share share = scaled_share(problem.incoming(), sizes[i], problem.total());
    out.fills[i] = share.quotient;
    remainders[i] = share.remainder;
    assigned += share.quotient;
  }
  award_largest_remainders(std::move(remainders), problem.incoming() - assigned, out);
  return out;
}

AllocationVector droop(const AllocationProblem& problem) {
  const auto sizes = problem.sizes();
  const Units quota = 1 + problem.total() / (1 + problem.incoming());
  AllocationVector out{std::vector<Units>(sizes.size())};
  std::vector<Units> remainders(sizes.size());
  Units assigned = 0;
  Units positive = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    out.fills[i] = sizes[i] / quota;
    remainders[i] = sizes[i] % quota;
    assigned += out.fills[i];
    positive += remainders[i] > 0 ? 1 : 0;
  }
  const Units leftover = problem.incoming() - assigned;
  if (leftover > positive) {
    throw Error(Errc::droop_infeasible,
                std::to_string(leftover) + " leftover units but only " +
                    std::to_string(positive) + " orders with a positive remainder (quota " +
                    std::to_string(quota) + ")");
  }
  award_largest_remainders(std::move(remainders), leftover, out);
  return out;
}

}  // namespace

MethodSpec parse_method(std::string_view name, std::uint64_t rss_seed) {
  if (name == "prorata") return ProRata{ProRataVariant::plain};
  if (name == "prorata-cme") return ProRata{ProRataVariant::cme};
  if (name == "hamilton" || name == "hare") return LargestRemainder{Quota::hare};
  if (name == "droop") return LargestRemainder{Quota::droop};
  if (name == "jd") return HighestAverages{DivisorRule::jd};
  if (name == "ws") return HighestAverages{DivisorRule::ws};
  if (name == "adam") return HighestAverages{DivisorRule::adam};
  if (name == "danish") return HighestAverages{DivisorRule::danish};
  if (name == "dean") return HighestAverages{DivisorRule::dean};
  if (name == "hh") return HighestAverages{DivisorRule::hh};
  if (name == "rss") return Rss{rss_seed};
  throw Error(Errc::parse_error, "unknown method '" + std::string(name) + "'");
}

std::string method_name(const MethodSpec& method) {
  struct Visitor {
    std::string operator()(const ProRata& m) const {
      return m.variant == ProRataVariant::plain ? "prorata" : "prorata-cme";
    }
    std::string operator()(const LargestRemainder& m) const {
      return m.quota == Quota::hare ? "hamilton" : "droop";
    }
    std::string operator()(const HighestAverages& m) const {
      switch (m.rule) {
        case DivisorRule::jd: return "jd";
        case DivisorRule::ws: return "ws";
        case DivisorRule::adam: return "adam";
        case DivisorRule::danish: return "danish";
        case DivisorRule::dean: return "dean";
        case DivisorRule::hh: return "hh";
      }
      return "?";
    }
    std::string operator()(const Rss&) const { return "rss"; }
  };
  return std::visit(Visitor{}, method);
}

bool respects_capacity(const MethodSpec& method) noexcept {
  return !std::holds_alternative<Rss>(method);
}

bool needs_unit_seed(DivisorRule rule) noexcept {
  return rule != DivisorRule::jd && rule != DivisorRule::ws;
}

AllocationVector pro_rata(const AllocationProblem& problem, ProRataVariant variant) {
  return variant == ProRataVariant::plain ? plain_pro_rata(problem) : cme_pro_rata(problem);
}

AllocationVector largest_remainder(const AllocationProblem& problem, Quota quota) {
  return quota == Quota::hare ? hare(problem) : droop(problem);
}

Ratio divisor_priority(DivisorRule rule, Units size, Units held) noexcept {
  const auto v = static_cast<u128>(size);
  const auto t = static_cast<u128>(held);
  switch (rule) {
    case DivisorRule::jd:  // f(t) = t + 1
      return {v, t + 1};
    case DivisorRule::ws:  // f(t) = (2t + 1) / 2
      return {2 * v, 2 * t + 1};
    case DivisorRule::adam:  // f(t) = ceil(t) = t on integers
      return {v, t};
    case DivisorRule::danish:  // f(t) = t / (t + 1/3) = 3t / (3t + 1)
      return {v * (3 * t + 1), 3 * t};
    case DivisorRule::dean:  // f(t) = t(t + 1) / (t + 1/2)
      return {v * (2 * t + 1), 2 * t * (t + 1)};
    case DivisorRule::hh:  // f(t) = sqrt(t(t + 1)); compared squared
      return {v * v, t * (t + 1)};
  }
  return {0, 1};
}

namespace {

// Priority size/f(held) with 64-bit parts, for the rules whose parts fit.
struct NarrowRatio {
  std::uint64_t num;
  std::uint64_t den;
};

struct NarrowCompare {
  std::strong_ordering operator()(const NarrowRatio& a, const NarrowRatio& b) const noexcept {
    return static_cast<u128>(a.num) * b.den <=> static_cast<u128>(b.num) * a.den;
  }
};

struct WideKey {
  Ratio operator()(DivisorRule rule, Units size, Units held) const noexcept {
    return divisor_priority(rule, size, held);
  }
};

struct NarrowKey {
  NarrowRatio operator()(DivisorRule rule, Units size, Units held) const noexcept {
    const Ratio r = divisor_priority(rule, size, held);
    return {static_cast<std::uint64_t>(r.num), static_cast<std::uint64_t>(r.den)};
  }
};

// JD, WS and Adam keep both parts below 2^64 when 2T and 2S + 1 do.
bool fits_narrow(DivisorRule rule, const AllocationProblem& problem) noexcept {
  const bool linear = rule == DivisorRule::jd || rule == DivisorRule::ws || rule == DivisorRule::adam;
  return linear && problem.total() < (Units{1} << 62);
}

template <class Key, class Compare, class MakeKey>
void run_divisor(const AllocationProblem& problem, DivisorRule rule, Units rounds,
                 AllocationVector& out) {
  const auto sizes = problem.sizes();
  const std::size_t n = sizes.size();
  const MakeKey make;
  std::vector<Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = make(rule, sizes[i], out.fills[i]);
  IndexedMaxQueue<Key, Compare> queue(std::move(keys));
  for (std::size_t i = 0; i < n; ++i) {
    if (out.fills[i] == sizes[i]) queue.erase(i);
  }
  for (Units k = 0; k < rounds; ++k) {
    const std::size_t j = queue.top();
    const Units held = ++out.fills[j];
    if (held == sizes[j]) {
      queue.pop();
    } else {
      queue.update_top(make(rule, sizes[j], held));
    }
  }
}

}  // namespace

AllocationVector highest_averages(const AllocationProblem& problem, DivisorRule rule) {
  const std::size_t n = problem.n();
  const bool seeded = needs_unit_seed(rule);
  if (seeded && problem.incoming() < static_cast<Units>(n)) {
    throw Error(Errc::positivity_infeasible,
                "rule needs one unit per order but S=" + std::to_string(problem.incoming()) +
                    " < n=" + std::to_string(n));
  }
  AllocationVector out{std::vector<Units>(n, seeded ? 1 : 0)};
  const Units rounds = seeded ? problem.incoming() - static_cast<Units>(n) : problem.incoming();
  if (fits_narrow(rule, problem)) {
    run_divisor<NarrowRatio, NarrowCompare, NarrowKey>(problem, rule, rounds, out);
  } else {
    run_divisor<Ratio, std::compare_three_way, WideKey>(problem, rule, rounds, out);
  }
  return out;
}

RssAllocation rss(const AllocationProblem& problem, std::uint64_t seed) {
  const auto sizes = problem.sizes();
  std::vector<Units> cumulative(sizes.size());
  std::partial_sum(sizes.begin(), sizes.end(), cumulative.begin());

  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<std::uint64_t> draw(0, static_cast<std::uint64_t>(problem.total() - 1));
  RssAllocation out{AllocationVector{std::vector<Units>(sizes.size())}, {}, seed};
  for (Units k = 0; k < problem.incoming(); ++k) {
    const auto x = static_cast<Units>(draw(engine));
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    ++out.allocation.fills[static_cast<std::size_t>(it - cumulative.begin())];
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (out.allocation.fills[i] > sizes[i]) out.over_capacity.push_back(i);
  }
  return out;
}

AllocationVector allocate(const AllocationProblem& problem, const MethodSpec& method) {
  struct Visitor {
    const AllocationProblem& problem;
    AllocationVector operator()(const ProRata& m) const { return pro_rata(problem, m.variant); }
    AllocationVector operator()(const LargestRemainder& m) const {
      return largest_remainder(problem, m.quota);
    }
    AllocationVector operator()(const HighestAverages& m) const {
      return highest_averages(problem, m.rule);
    }
    AllocationVector operator()(const Rss& m) const { return rss(problem, m.seed).allocation; }
  };
  return std::visit(Visitor{problem}, method);
}

}  // namespace apportion
