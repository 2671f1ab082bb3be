#include "apportion/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "apportion/error.hpp"
#include "apportion/metrics.hpp"

namespace apportion {
namespace {

// Runs body(i) for i in [0, count) across `threads` workers. Each index is
// handled exactly once; callers store results by index.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Moments {
  double mean = 0;
  double stddev = 0;
};

// Population standard deviation, two passes in index order.
Moments moments(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double sum = 0;
  for (const double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double sq = 0;
  for (const double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(xs.size()))};
}

}  // namespace

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double power_law_quantile(double decay, double u) {
  if (!(decay > 1.0)) throw Error(Errc::invalid_decay, "decay must exceed 1");
  return std::pow(1.0 - u, -1.0 / (decay - 1.0));
}

double sample_power_law(double decay, Rng& rng) {
  return power_law_quantile(decay, uniform_unit(rng));
}

Units round_half_up(double x) {
  const double r = std::floor(x + 0.5);
  if (!(r < 0x1.0p62)) throw Error(Errc::overflow, "power-law sample too large");
  return static_cast<Units>(r);
}

std::vector<Units> gen_resting_orders(std::size_t n, Units quantum, double decay, Rng& rng) {
  std::vector<Units> sizes(n);
  for (auto& size : sizes) {
    const Units units = round_half_up(sample_power_law(decay, rng));
    if (__builtin_mul_overflow(units, quantum, &size)) {
      throw Error(Errc::overflow, "order size overflows");
    }
  }
  return sizes;
}

Units gen_incoming_size(const std::vector<Units>& sizes, Rng& rng) {
  Units total = 0;
  for (const Units t : sizes) total += t;
  if (total < 2) throw Error(Errc::degenerate_total, "total resting size below 2");
  std::uniform_int_distribution<Units> draw(0, total - 1);
  for (;;) {
    const Units s = draw(rng);
    if (s != 0) return s;
  }
}

void SimulationConfig::validate() const {
  if (n < 1) throw Error(Errc::invalid_config, "n must be at least 1");
  if (quantum < 1) throw Error(Errc::invalid_config, "quantum must be at least 1");
  if (iterations < 1) throw Error(Errc::invalid_config, "iterations must be at least 1");
  if (!(decay > 1.0)) throw Error(Errc::invalid_config, "decay must exceed 1");
  for (const auto& m : methods) {
    if (std::holds_alternative<Rss>(m)) {
      throw Error(Errc::invalid_config, "rss is not a simulation method");
    }
  }
}

Rng iteration_rng(std::uint64_t seed, std::uint64_t iteration) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(iteration),
                    static_cast<std::uint32_t>(iteration >> 32)};
  return Rng(seq);
}

AllocationProblem generate_scenario(const SimulationConfig& config, std::uint64_t iteration) {
  Rng rng = iteration_rng(config.seed, iteration);
  std::vector<Units> sizes = gen_resting_orders(config.n, config.quantum, config.decay, rng);
  const Units incoming = gen_incoming_size(sizes, rng);
  return AllocationProblem(std::move(sizes), incoming);
}

SimSummary run_distance_simulation(const SimulationConfig& config,
                                   const IterationObserver& observer) {
  config.validate();
  const std::size_t m = config.methods.size();
  std::vector<IterationRecord> records(config.iterations);

  parallel_for(config.iterations, config.threads, [&](std::size_t it) {
    const AllocationProblem problem = generate_scenario(config, it);
    const IdealAllocation ideal = ideal_allocation(problem);
    const AllocationVector hamilton = largest_remainder(problem, Quota::hare);
    IterationRecord& rec = records[it];
    rec.iteration = it;
    rec.n = problem.n();
    rec.total = problem.total();
    rec.incoming = problem.incoming();
    rec.rho.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const AllocationVector alloc = allocate(problem, config.methods[k]);
      try {
        const RhoPair rho = rho_ratios(alloc, hamilton, ideal);
        rec.rho[k] = {true, rho.rho1, rho.rho2};
      } catch (const Error& e) {
        if (e.code() != Errc::undefined_rho) throw;
        rec.rho[k] = {};
      }
    }
  });

  SimSummary summary{config, {}};
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> r1;
    std::vector<double> r2;
    r1.reserve(records.size());
    r2.reserve(records.size());
    for (const auto& rec : records) {
      if (!rec.rho[k].defined) continue;
      r1.push_back(rec.rho[k].rho1);
      r2.push_back(rec.rho[k].rho2);
    }
    const Moments a = moments(r1);
    const Moments b = moments(r2);
    MethodSummary s;
    s.method = method_name(config.methods[k]);
    s.mu1 = a.mean;
    s.sigma1 = a.stddev;
    s.mu2 = b.mean;
    s.sigma2 = b.stddev;
    s.samples = r1.size();
    s.skipped = records.size() - r1.size();
    s.min_rho1 = r1.empty() ? 0 : *std::min_element(r1.begin(), r1.end());
    s.min_rho2 = r2.empty() ? 0 : *std::min_element(r2.begin(), r2.end());
    summary.methods.push_back(std::move(s));
  }
  if (observer) {
    for (const auto& rec : records) observer(rec);
  }
  return summary;
}

QuotaStats run_quota_simulation(const SimulationConfig& config, const QuotaObserver& observer) {
  config.validate();
  const MethodSpec method =
      config.methods.empty() ? MethodSpec{HighestAverages{DivisorRule::ws}} : config.methods.front();
  std::vector<QuotaIteration> records(config.iterations);

  parallel_for(config.iterations, config.threads, [&](std::size_t it) {
    const AllocationProblem problem = generate_scenario(config, it);
    const QuotaReport report = quota_report(problem, allocate(problem, method));
    records[it] = {it, report.violated, report.min_extent(), report.max_extent()};
  });

  QuotaStats stats{config, method_name(method), 0, 0, 0, 0};
  for (const auto& rec : records) {
    stats.violating += rec.violated ? 1 : 0;
    stats.u = std::min(stats.u, rec.min_extent);
    stats.v = std::max(stats.v, rec.max_extent);
    if (observer) observer(rec);
  }
  stats.lambda = 100.0 * static_cast<double>(stats.violating) /
                 static_cast<double>(config.iterations);
  return stats;
}

}  // namespace apportion
