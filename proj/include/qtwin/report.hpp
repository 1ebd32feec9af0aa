#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qtwin/circuit.hpp"
#include "qtwin/twin.hpp"

namespace qtwin {

// One assessment, classical or quantum, as a machine-readable document.
// Field order is fixed; absent optionals are omitted, so documents are
// byte-stable for fixed inputs (wall_time_ms excluded under --no-timestamp).
struct AssessmentReport {
  std::string model;
  std::string method;  // exact | mc | twin | twin-sample | qae
  std::optional<std::string> backend;
  double estimate = 0.0;
  double uncertainty = 0.0;
  std::optional<TwinLayout> layout;
  std::optional<bool> semantic_oracle;
  std::optional<GateStats> gate_counts;
  std::optional<std::uint64_t> oracle_queries;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint32_t> phase_qubits;
  std::optional<std::uint64_t> modal_outcome;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> rng;
  std::optional<double> noise_lambda;
  std::optional<std::uint64_t> trajectories;
  std::optional<double> lolp;
  std::optional<double> wall_time_ms;

  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json comparison_to_json(const ComparisonTable& table, const std::string& model,
                                          const std::string& backend,
                                          std::optional<double> wall_time_ms);

// Documented CSV: header row, one data row per target error, then
// `# key,value` footer lines for the truth and the fitted slopes.
std::string comparison_to_csv(const ComparisonTable& table);

}  // namespace qtwin
