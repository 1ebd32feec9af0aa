#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qtwin/circuit.hpp"
#include "qtwin/classical.hpp"
#include "qtwin/relmodel.hpp"
#include "qtwin/statevec.hpp"

namespace qtwin {

// Qubit register map. Component qubit i corresponds to model component i;
// work ancillas exist only for tree synthesis; the phase register only for
// amplitude estimation.
struct TwinLayout {
  std::vector<std::uint32_t> component_qubits;
  std::vector<std::uint32_t> work_ancillas;
  std::uint32_t output_qubit = 0;
  std::vector<std::uint32_t> phase_register;
  std::uint32_t total_qubits = 0;

  // Everything the assessment circuit acts on: components + ancillas + output.
  std::vector<std::uint32_t> assessment_register() const;
};

enum class OracleBackend {
  Tree,      // explicit and/or/not synthesis with ancillas and uncompute
  Minterm,   // one multi-controlled X per satisfying assignment (N <= 14)
  Semantic,  // a single predicate-oracle gate; accepts every structure
};

const char* oracle_backend_name(OracleBackend backend);
OracleBackend parse_oracle_backend(const std::string& name);

inline constexpr std::uint32_t kMintermMaxComponents = 14;

// theta = 2 asin(sqrt(p)), so RY(theta)|0> measures 1 with probability p.
double encode_availability(double p);

// Register plan for a model/backend pair, optionally with a phase register.
TwinLayout plan_layout(const ReliabilityModel& model, OracleBackend backend,
                       std::uint32_t phase_qubits = 0);

// One RY per component on qubits 0..N-1; the joint basis distribution equals
// the classical product law.
Circuit build_state_prep(const ReliabilityModel& model);

// Writes phi(components) into the output qubit: |x>|0..0>|b> -> |x>|0..0>|b ^ phi(x)>.
// Throws ValidationError for unsupported structure/backend pairings.
Circuit synthesize_oracle(const ReliabilityModel& model, OracleBackend backend,
                          const TwinLayout& layout);

struct Twin {
  Circuit circuit;  // A = state prep followed by oracle
  TwinLayout layout;
  OracleBackend backend;
};

// The full assessment circuit; the good subspace is output_qubit = 1 and
// a(model) = P(output = 1) of A|0...0>. Throws ResourceError when the
// register exceeds the simulator cap.
Twin build_twin(const ReliabilityModel& model, OracleBackend backend,
                std::uint32_t phase_qubits = 0,
                std::uint32_t qubit_cap = StateVector::kDefaultQubitCap);

// Simulates A once and reads the output marginal.
double assess_exact(const ReliabilityModel& model, OracleBackend backend,
                    std::uint32_t qubit_cap = StateVector::kDefaultQubitCap);

struct SamplingAssessment {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

// Samples the output qubit `shots` times from one simulation of A.
SamplingAssessment assess_sampling(const ReliabilityModel& model, OracleBackend backend,
                                   std::uint64_t shots, std::uint64_t seed,
                                   std::uint32_t qubit_cap = StateVector::kDefaultQubitCap);

// Q = A S0 A^-1 S_chi. S0 reflects about |0..0> of the assessment register
// (X on all, MCZ, X on all). S_chi is realized as X Z X on the output qubit,
// i.e. a phase flip of the output=0 subspace: this differs from a plain Z by
// a global -1 and gives Q eigenphases +-2*theta_a, which the amplitude-
// estimation read-out sin^2(pi y / 2^m) requires. Probabilities after
// Q^k A|0> follow sin^2((2k+1) theta_a) either way.
Circuit grover_operator(const Twin& twin);

struct AmplitudeEstimate {
  double estimate = 0.0;        // sin^2(pi * modal_outcome / 2^m)
  std::uint32_t phase_qubits = 0;
  std::uint64_t modal_outcome = 0;
  std::uint64_t oracle_queries = 0;  // 2^m - 1 controlled powers + 1 initial A
  double error_bound = 0.0;          // pi/2^m + pi^2/4^m
};

// Canonical phase-estimation amplitude estimation: H on the phase register,
// controlled-Q^(2^j), inverse QFT, modal outcome. shots = 0 reads the modal
// outcome from the exact distribution; otherwise the mode of sampled
// outcomes (seeded).
AmplitudeEstimate qae(const ReliabilityModel& model, OracleBackend backend,
                      std::uint32_t phase_qubits, std::uint64_t seed, std::uint64_t shots = 0,
                      std::uint32_t qubit_cap = StateVector::kDefaultQubitCap);

struct ComparisonRow {
  double target_error = 0.0;
  std::uint64_t mc_shots = 0;
  double mc_achieved_error = 0.0;
  std::uint32_t qae_phase_qubits = 0;
  std::uint64_t qae_oracle_queries = 0;
  double qae_achieved_error = 0.0;
};

struct ComparisonTable {
  double truth = 0.0;
  std::vector<ComparisonRow> rows;
  std::vector<ConvergencePoint> mc_points;               // decade sweep feeding mc_slope
  std::vector<std::pair<std::uint64_t, double>> qae_points;  // (queries, modal error)
  double mc_slope = 0.0;   // expected ~ -1/2
  double qae_slope = 0.0;  // expected ~ -1
  std::uint64_t seed = 0;
};

// Monte Carlo shots (empirical doubling search, median over repeated seeds)
// vs QAE oracle queries (smallest m whose bound pi/2^m + pi^2/4^m meets the
// target) for each target error, plus fitted error-vs-resources slopes.
ComparisonTable sample_complexity_compare(const ReliabilityModel& model, OracleBackend backend,
                                          const std::vector<double>& target_errors,
                                          std::uint64_t seed,
                                          std::uint32_t qubit_cap = StateVector::kDefaultQubitCap);

// QFT over the listed qubits (qubits[0] = least-significant bit):
// |y> -> 2^{-m/2} sum_z exp(2 pi i y z / 2^m) |z>.
Circuit make_qft(std::uint32_t num_qubits, const std::vector<std::uint32_t>& qubits);

// Semantic oracle predicate evaluating the model's structure function;
// pre-tabulated for models small enough to enumerate.
std::shared_ptr<const OraclePredicate> make_structure_predicate(
    std::shared_ptr<const ReliabilityModel> model);

}  // namespace qtwin
