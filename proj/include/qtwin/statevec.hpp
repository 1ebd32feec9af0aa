#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qtwin/circuit.hpp"

namespace qtwin {

// Stochastic-Pauli depolarizing noise: after every gate, each touched qubit
// independently suffers, with probability lambda, a Pauli drawn uniformly
// from {I, X, Y, Z}. At lambda=1 a qubit is fully depolarized (maximally
// mixed on average), matching the density-matrix channel
// rho -> (1-lambda) rho + lambda I/2.
struct NoiseModel {
  double lambda = 0.0;
  std::uint64_t trajectories = 1;
};

// Measurement tallies over a selected, ordered set of qubits. Key character j
// (left to right) is the measured value of the j-th selected qubit.
struct SampleCounts {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;
};

// Dense 2^n-amplitude state. Qubit 0 is the least-significant bit of the
// basis-state index.
class StateVector {
 public:
  static constexpr std::uint32_t kDefaultQubitCap = 26;

  // |0...0>; throws ResourceError when num_qubits exceeds the cap.
  static StateVector zero(std::uint32_t num_qubits,
                          std::uint32_t qubit_cap = kDefaultQubitCap);

  std::uint32_t num_qubits() const { return n_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << n_; }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  std::complex<double> amplitude(std::uint64_t basis) const { return amps_[basis]; }

  // Multiplies the state by the gate's unitary. When control_mask is nonzero
  // the gate acts only on basis states with all mask bits set (used to apply
  // controlled powers of composite operators without rewriting them).
  void apply(const Gate& gate, std::uint64_t control_mask = 0);

  // Sum of |amplitude|^2 over basis states whose bit at `qubit` equals value.
  double marginal_probability(std::uint32_t qubit, int value) const;

  // Probability distribution over the packed values of an ordered qubit set:
  // result[v] = P(selected qubits read v), bit j of v from qubits[j].
  std::vector<double> register_distribution(const std::vector<std::uint32_t>& qubits) const;

  double norm_squared() const;

 private:
  StateVector(std::uint32_t n, std::vector<std::complex<double>> amps)
      : n_(n), amps_(std::move(amps)) {}

  std::uint32_t n_;
  std::vector<std::complex<double>> amps_;
};

// Applies the circuit's gates in sequence to the given state.
StateVector run(const Circuit& circuit, StateVector initial);

// run from |0...0>.
StateVector run(const Circuit& circuit, std::uint32_t qubit_cap = StateVector::kDefaultQubitCap);

// i.i.d. basis-state draws from |amplitude|^2, projected onto the selected
// qubits. Identical (state, qubits, shots, seed) gives identical counts.
SampleCounts sample(const StateVector& state, const std::vector<std::uint32_t>& qubits,
                    std::uint64_t shots, std::uint64_t seed);

// Mean P(observed_qubit = 1) over noise.trajectories independent stochastic-
// Pauli trajectories of the circuit. Deterministic given seed; trajectory t
// uses derive_seed(seed, t).
double run_noisy(const Circuit& circuit, const NoiseModel& noise, std::uint32_t observed_qubit,
                 std::uint64_t seed);

// Same, also reporting the standard error of the trajectory mean.
struct NoisyResult {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::uint64_t trajectories = 0;
};
NoisyResult run_noisy_detailed(const Circuit& circuit, const NoiseModel& noise,
                               std::uint32_t observed_qubit, std::uint64_t seed);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qtwin
