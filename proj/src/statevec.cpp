#include "qtwin/statevec.hpp"

#include <algorithm>
#include <cmath>

#include "qtwin/errors.hpp"
#include "qtwin/rng.hpp"

namespace qtwin {

namespace {

using cd = std::complex<double>;

// Kahan-compensated accumulator; probability read-outs must not depend on
// summation luck at the 1e-12 tolerances the tests pin.
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

StateVector StateVector::zero(std::uint32_t num_qubits, std::uint32_t qubit_cap) {
  if (num_qubits == 0) throw ValidationError("state requires at least one qubit");
  if (num_qubits > qubit_cap) {
    throw ResourceError("requested " + std::to_string(num_qubits) +
                        " qubits; simulator cap is " + std::to_string(qubit_cap));
  }
  std::vector<cd> amps(std::uint64_t{1} << num_qubits, cd{0.0, 0.0});
  amps[0] = cd{1.0, 0.0};
  return StateVector(num_qubits, std::move(amps));
}

void StateVector::apply(const Gate& gate, std::uint64_t control_mask) {
  for (std::uint32_t q : gate.qubits) {
    if (q >= n_) {
      throw ValidationError(std::string(gate_kind_name(gate.kind)) + " gate references qubit " +
                            std::to_string(q) + " in a " + std::to_string(n_) + "-qubit state");
    }
  }
  const std::uint64_t dim = dimension();

  // 2x2 kernel on `target`, restricted to indices satisfying `mask`.
  auto apply_1q = [&](std::uint32_t target, std::uint64_t mask, cd m00, cd m01, cd m10, cd m11) {
    const std::uint64_t t = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & t) || ((i & mask) != mask)) continue;
      const cd a0 = amps_[i];
      const cd a1 = amps_[i | t];
      amps_[i] = m00 * a0 + m01 * a1;
      amps_[i | t] = m10 * a0 + m11 * a1;
    }
  };

  auto flip_pairs = [&](std::uint32_t target, std::uint64_t mask) {
    const std::uint64_t t = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & t) || ((i & mask) != mask)) continue;
      std::swap(amps_[i], amps_[i | t]);
    }
  };

  switch (gate.kind) {
    case GateKind::RY: {
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      apply_1q(gate.qubits[0], control_mask, cd{c, 0}, cd{-s, 0}, cd{s, 0}, cd{c, 0});
      break;
    }
    case GateKind::X:
      flip_pairs(gate.qubits[0], control_mask);
      break;
    case GateKind::Y:
      apply_1q(gate.qubits[0], control_mask, cd{0, 0}, cd{0, -1}, cd{0, 1}, cd{0, 0});
      break;
    case GateKind::Z: {
      const std::uint64_t mask = control_mask | (std::uint64_t{1} << gate.qubits[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
      }
      break;
    }
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      apply_1q(gate.qubits[0], control_mask, cd{r, 0}, cd{r, 0}, cd{r, 0}, cd{-r, 0});
      break;
    }
    case GateKind::Phase: {
      const cd phase{std::cos(gate.angle), std::sin(gate.angle)};
      const std::uint64_t mask = control_mask | (std::uint64_t{1} << gate.qubits[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) amps_[i] *= phase;
      }
      break;
    }
    case GateKind::CX:
      flip_pairs(gate.qubits[1], control_mask | (std::uint64_t{1} << gate.qubits[0]));
      break;
    case GateKind::CCX:
      flip_pairs(gate.qubits[2], control_mask | (std::uint64_t{1} << gate.qubits[0]) |
                                     (std::uint64_t{1} << gate.qubits[1]));
      break;
    case GateKind::MCX: {
      std::uint64_t mask = control_mask;
      for (std::size_t i = 0; i + 1 < gate.qubits.size(); ++i) {
        mask |= std::uint64_t{1} << gate.qubits[i];
      }
      flip_pairs(gate.qubits.back(), mask);
      break;
    }
    case GateKind::MCZ: {
      std::uint64_t mask = control_mask;
      for (std::uint32_t q : gate.qubits) mask |= std::uint64_t{1} << q;
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
      }
      break;
    }
    case GateKind::Swap: {
      const std::uint64_t a = std::uint64_t{1} << gate.qubits[0];
      const std::uint64_t b = std::uint64_t{1} << gate.qubits[1];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & a) && !(i & b) && ((i & control_mask) == control_mask)) {
          std::swap(amps_[i], amps_[i ^ (a | b)]);
        }
      }
      break;
    }
    case GateKind::CPhase: {
      const cd phase{std::cos(gate.angle), std::sin(gate.angle)};
      const std::uint64_t mask = control_mask | (std::uint64_t{1} << gate.qubits[0]) |
                                 (std::uint64_t{1} << gate.qubits[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) amps_[i] *= phase;
      }
      break;
    }
    case GateKind::PredicateOracle: {
      // |x>|b> -> |x>|b ^ phi(x)>: swap each target pair whose inputs satisfy
      // the predicate. Predicates pre-tabulate phi when small, so the eval
      // here is usually a table lookup.
      const std::uint64_t t = std::uint64_t{1} << gate.qubits.back();
      const std::size_t k = gate.qubits.size() - 1;
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & t) || ((i & control_mask) != control_mask)) continue;
        std::uint64_t x = 0;
        for (std::size_t j = 0; j < k; ++j) {
          x |= ((i >> gate.qubits[j]) & 1u) << j;
        }
        if (gate.predicate->eval(x)) std::swap(amps_[i], amps_[i | t]);
      }
      break;
    }
  }
}

double StateVector::marginal_probability(std::uint32_t qubit, int value) const {
  if (qubit >= n_) {
    throw ValidationError("marginal of qubit " + std::to_string(qubit) + " in a " +
                          std::to_string(n_) + "-qubit state");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  CompensatedSum acc;
  for (std::uint64_t i = 0; i < dimension(); ++i) {
    if (((i & bit) != 0) == (value != 0)) acc.add(std::norm(amps_[i]));
  }
  return acc.sum;
}

std::vector<double> StateVector::register_distribution(
    const std::vector<std::uint32_t>& qubits) const {
  for (std::uint32_t q : qubits) {
    if (q >= n_) {
      throw ValidationError("register distribution references qubit " + std::to_string(q) +
                            " in a " + std::to_string(n_) + "-qubit state");
    }
  }
  std::vector<double> dist(std::uint64_t{1} << qubits.size(), 0.0);
  for (std::uint64_t i = 0; i < dimension(); ++i) {
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      v |= ((i >> qubits[j]) & 1u) << j;
    }
    dist[v] += std::norm(amps_[i]);
  }
  return dist;
}

double StateVector::norm_squared() const {
  CompensatedSum acc;
  for (const cd& a : amps_) acc.add(std::norm(a));
  return acc.sum;
}

StateVector run(const Circuit& circuit, StateVector initial) {
  if (circuit.num_qubits() != initial.num_qubits()) {
    throw ValidationError("circuit has " + std::to_string(circuit.num_qubits()) +
                          " qubits; state has " + std::to_string(initial.num_qubits()));
  }
  for (const auto& g : circuit.gates()) initial.apply(g);
  return initial;
}

StateVector run(const Circuit& circuit, std::uint32_t qubit_cap) {
  return run(circuit, StateVector::zero(circuit.num_qubits(), qubit_cap));
}

SampleCounts sample(const StateVector& state, const std::vector<std::uint32_t>& qubits,
                    std::uint64_t shots, std::uint64_t seed) {
  for (std::uint32_t q : qubits) {
    if (q >= state.num_qubits()) {
      throw ValidationError("sample references qubit " + std::to_string(q) + " in a " +
                            std::to_string(state.num_qubits()) + "-qubit state");
    }
  }
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double running = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    running += std::norm(amps[i]);
    cdf[i] = running;
  }
  const double total = cdf.back();

  Rng rng(seed);
  SampleCounts result;
  result.shots = shots;
  std::string key(qubits.size(), '0');
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t basis =
        static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                            static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      key[j] = ((basis >> qubits[j]) & 1u) ? '1' : '0';
    }
    ++result.counts[key];
  }
  return result;
}

namespace {

void inject_pauli(StateVector& state, std::uint32_t qubit, std::uint64_t which) {
  switch (which) {
    case 0: break;  // I
    case 1: state.apply(Gate::x(qubit)); break;
    case 2: state.apply(Gate::y(qubit)); break;
    case 3: state.apply(Gate::z(qubit)); break;
  }
}

}  // namespace

NoisyResult run_noisy_detailed(const Circuit& circuit, const NoiseModel& noise,
                               std::uint32_t observed_qubit, std::uint64_t seed) {
  if (noise.lambda < 0.0 || noise.lambda > 1.0) {
    throw ValidationError("noise lambda must lie in [0, 1]");
  }
  if (noise.trajectories == 0) {
    throw ValidationError("noise model requires at least one trajectory");
  }
  if (noise.lambda == 0.0) {
    // All trajectories coincide with the noiseless run.
    const double p = run(circuit).marginal_probability(observed_qubit, 1);
    return NoisyResult{p, 0.0, noise.trajectories};
  }

  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (std::uint64_t t = 0; t < noise.trajectories; ++t) {
    Rng rng(derive_seed(seed, t));
    StateVector state = StateVector::zero(circuit.num_qubits());
    for (const auto& gate : circuit.gates()) {
      state.apply(gate);
      for (std::uint32_t q : gate.qubits) {
        if (rng.bernoulli(noise.lambda)) inject_pauli(state, q, rng.below(4));
      }
    }
    const double p = state.marginal_probability(observed_qubit, 1);
    sum.add(p);
    sum_sq.add(p * p);
  }
  const double n = static_cast<double>(noise.trajectories);
  const double mean = sum.sum / n;
  double sem = 0.0;
  if (noise.trajectories > 1) {
    const double var = std::max(0.0, (sum_sq.sum - n * mean * mean) / (n - 1.0));
    sem = std::sqrt(var / n);
  }
  return NoisyResult{mean, sem, noise.trajectories};
}

double run_noisy(const Circuit& circuit, const NoiseModel& noise, std::uint32_t observed_qubit,
                 std::uint64_t seed) {
  return run_noisy_detailed(circuit, noise, observed_qubit, seed).mean;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ValidationError("fidelity of states with different qubit counts");
  }
  const auto va = a.amplitudes();
  const auto vb = b.amplitudes();
  cd inner{0.0, 0.0};
  for (std::size_t i = 0; i < va.size(); ++i) inner += std::conj(va[i]) * vb[i];
  return std::norm(inner);
}

}  // namespace qtwin
