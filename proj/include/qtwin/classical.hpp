#pragma once

#include <cstdint>
#include <vector>

#include "qtwin/relmodel.hpp"

namespace qtwin {

struct ExactResult {
  double reliability = 0.0;
  std::uint64_t states_enumerated = 0;  // 2^N
  double lolp = 0.0;                    // 1 - reliability
};

struct MonteCarloResult {
  double estimate = 0.0;
  double stderr_ = 0.0;   // sqrt(est * (1 - est) / shots)
  double ci95_low = 0.0;  // estimate -/+ 1.96 stderr, clamped to [0, 1]
  double ci95_high = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

struct ConvergencePoint {
  std::uint64_t shots = 0;
  double median_abs_error = 0.0;
};

struct ConvergenceSweep {
  std::vector<ConvergencePoint> points;
  double slope = 0.0;  // least-squares slope of log(error) vs log(shots)
  std::uint64_t repeats = 0;
  std::uint64_t seed = 0;
  double truth = 0.0;
};

// Ground truth by full enumeration of the 2^N component states.
// Throws ResourceError when N exceeds the cap.
ExactResult exact_reliability(const ReliabilityModel& model,
                              std::uint32_t enumeration_cap = ReliabilityModel::kDefaultEnumerationCap);

// Plain Monte Carlo: i.i.d. component draws per availability, structure
// evaluated per sample. Deterministic given seed.
MonteCarloResult monte_carlo(const ReliabilityModel& model, std::uint64_t shots,
                             std::uint64_t seed);

// Median |estimate - truth| per shot count, over `repeats` runs with seeds
// derive_seed(seed, level * 4096 + repeat), plus the fitted log-log slope.
ConvergenceSweep convergence_sweep(const ReliabilityModel& model,
                                   const std::vector<std::uint64_t>& shot_schedule,
                                   std::uint64_t repeats, std::uint64_t seed);

// Least-squares slope of ln(y) vs ln(x); zero-valued ys are floored at 1e-18.
double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace qtwin
