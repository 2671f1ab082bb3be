#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "apportion/methods.hpp"
#include "apportion/problem.hpp"

namespace apportion {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform_unit(Rng& rng);

/// Inverse CDF of the density proportional to x^(-decay) on [1, inf):
/// x = (1 - u)^(-1 / (decay - 1)). Throws InvalidDecay when decay <= 1.
double power_law_quantile(double decay, double u);
double sample_power_law(double decay, Rng& rng);

/// Rounds half-up to the nearest integer; throws Overflow beyond 2^62.
Units round_half_up(double x);

/// n order sizes, each round_half_up(power-law sample) * quantum.
std::vector<Units> gen_resting_orders(std::size_t n, Units quantum, double decay, Rng& rng);

/// Uniform in [1, T - 1]; a draw of 0 from [0, T - 1] is redrawn.
/// Throws DegenerateTotal when T < 2.
Units gen_incoming_size(const std::vector<Units>& sizes, Rng& rng);

struct SimulationConfig {
  std::size_t n = 50;
  Units quantum = 100;
  std::size_t iterations = 1000;
  double decay = 2.0;
  std::uint64_t seed = 0;
  std::vector<MethodSpec> methods;
  /// 0 selects std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned threads = 0;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Independent engine for one iteration, derived from (root seed, index), so
/// serial and parallel runs draw identical scenarios.
Rng iteration_rng(std::uint64_t seed, std::uint64_t iteration);

/// Scenario drawn for `iteration`: sizes first, then S.
AllocationProblem generate_scenario(const SimulationConfig& config, std::uint64_t iteration);

struct RhoSample {
  bool defined = false;
  double rho1 = 0;
  double rho2 = 0;
};

struct IterationRecord {
  std::uint64_t iteration = 0;
  std::size_t n = 0;
  Units total = 0;
  Units incoming = 0;
  /// One entry per config method, in config order.
  std::vector<RhoSample> rho;
};

struct MethodSummary {
  std::string method;
  double mu1 = 0;
  double sigma1 = 0;
  double mu2 = 0;
  double sigma2 = 0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double min_rho1 = 0;
  double min_rho2 = 0;
};

struct SimSummary {
  SimulationConfig config;
  std::vector<MethodSummary> methods;
};

using IterationObserver = std::function<void(const IterationRecord&)>;

/// rho_1, rho_2 against Hamilton for every config method over N scenarios.
/// Means and population standard deviations; iterations where Hamilton hits
/// the ideal exactly are skipped. The observer sees records in index order.
SimSummary run_distance_simulation(const SimulationConfig& config,
                                   const IterationObserver& observer = {});

struct QuotaIteration {
  std::uint64_t iteration = 0;
  bool violated = false;
  Units min_extent = 0;
  Units max_extent = 0;
};

struct QuotaStats {
  SimulationConfig config;
  std::string method;
  /// Percentage of iterations with any quota violation.
  double lambda = 0;
  std::size_t violating = 0;
  /// Most negative lower-quota extent, 0 when none occurred.
  Units u = 0;
  /// Largest upper-quota extent, 0 when none occurred.
  Units v = 0;
};

using QuotaObserver = std::function<void(const QuotaIteration&)>;

/// Quota audit of config.methods.front() (WS when empty) over N scenarios.
QuotaStats run_quota_simulation(const SimulationConfig& config,
                                const QuotaObserver& observer = {});

}  // namespace apportion
