#include "qtwin/classical.hpp"

#include <algorithm>
#include <cmath>

#include "qtwin/errors.hpp"
#include "qtwin/rng.hpp"

namespace qtwin {

namespace {

struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

ExactResult exact_reliability(const ReliabilityModel& model, std::uint32_t enumeration_cap) {
  const std::uint32_t n = model.component_count();
  if (n > enumeration_cap) {
    throw ResourceError("enumeration of " + std::to_string(n) +
                        " components exceeds cap " + std::to_string(enumeration_cap));
  }
  const std::uint64_t states = std::uint64_t{1} << n;
  CompensatedSum acc;
  for (std::uint64_t x = 0; x < states; ++x) {
    if (model.evaluate_mask(x)) acc.add(model.state_probability_mask(x));
  }
  ExactResult result;
  result.reliability = acc.sum;
  result.states_enumerated = states;
  result.lolp = 1.0 - result.reliability;
  return result;
}

MonteCarloResult monte_carlo(const ReliabilityModel& model, std::uint64_t shots,
                             std::uint64_t seed) {
  if (shots == 0) throw ValidationError("monte carlo requires at least one shot");
  const std::uint32_t n = model.component_count();
  Rng rng(seed);
  std::uint64_t successes = 0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    std::uint64_t state = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (rng.bernoulli(model.components()[i].availability)) state |= std::uint64_t{1} << i;
    }
    if (model.evaluate_mask(state)) ++successes;
  }
  MonteCarloResult result;
  result.estimate = static_cast<double>(successes) / static_cast<double>(shots);
  result.stderr_ = std::sqrt(result.estimate * (1.0 - result.estimate) /
                             static_cast<double>(shots));
  result.ci95_low = std::max(0.0, result.estimate - 1.96 * result.stderr_);
  result.ci95_high = std::min(1.0, result.estimate + 1.96 * result.stderr_);
  result.shots = shots;
  result.seed = seed;
  return result;
}

double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(std::max(ys[i], 1e-18));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

ConvergenceSweep convergence_sweep(const ReliabilityModel& model,
                                   const std::vector<std::uint64_t>& shot_schedule,
                                   std::uint64_t repeats, std::uint64_t seed) {
  if (shot_schedule.empty()) throw ValidationError("convergence sweep requires a shot schedule");
  if (repeats == 0) throw ValidationError("convergence sweep requires at least one repeat");

  const double truth = exact_reliability(model).reliability;
  ConvergenceSweep sweep;
  sweep.repeats = repeats;
  sweep.seed = seed;
  sweep.truth = truth;

  std::vector<double> xs, ys;
  for (std::size_t level = 0; level < shot_schedule.size(); ++level) {
    std::vector<double> errors;
    errors.reserve(repeats);
    for (std::uint64_t r = 0; r < repeats; ++r) {
      const std::uint64_t run_seed = derive_seed(seed, level * 4096 + r);
      errors.push_back(std::abs(monte_carlo(model, shot_schedule[level], run_seed).estimate -
                                truth));
    }
    std::sort(errors.begin(), errors.end());
    const double median = (repeats % 2 == 1)
                              ? errors[repeats / 2]
                              : 0.5 * (errors[repeats / 2 - 1] + errors[repeats / 2]);
    sweep.points.push_back({shot_schedule[level], median});
    xs.push_back(static_cast<double>(shot_schedule[level]));
    ys.push_back(median);
  }
  sweep.slope = log_log_slope(xs, ys);
  return sweep;
}

}  // namespace qtwin
