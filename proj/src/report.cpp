#include "qtwin/report.hpp"

#include <cstdio>

#include "qtwin/rng.hpp"

namespace qtwin {

namespace {

std::string fmt_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace

nlohmann::ordered_json AssessmentReport::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["method"] = method;
  if (backend) j["backend"] = *backend;
  j["estimate"] = estimate;
  j["uncertainty"] = uncertainty;
  if (layout) {
    j["qubits_total"] = layout->total_qubits;
    nlohmann::ordered_json jl;
    jl["components"] = layout->component_qubits.size();
    jl["work_ancillas"] = layout->work_ancillas.size();
    jl["output"] = 1;
    jl["phase"] = layout->phase_register.size();
    jl["amplitudes"] = std::uint64_t{1} << layout->total_qubits;
    j["layout"] = std::move(jl);
  }
  if (semantic_oracle) j["semantic_oracle"] = *semantic_oracle;
  if (gate_counts) {
    nlohmann::ordered_json jg;
    for (const auto& [kind, count] : gate_counts->by_kind) jg[kind] = count;
    jg["total"] = gate_counts->total;
    j["gate_counts"] = std::move(jg);
  }
  if (oracle_queries) j["oracle_queries"] = *oracle_queries;
  if (shots) j["shots"] = *shots;
  if (phase_qubits) j["phase_qubits"] = *phase_qubits;
  if (modal_outcome) j["modal_outcome"] = *modal_outcome;
  if (seed) j["seed"] = *seed;
  if (rng) j["rng"] = *rng;
  if (noise_lambda) j["noise"] = *noise_lambda;
  if (trajectories) j["trajectories"] = *trajectories;
  if (lolp) j["lolp"] = *lolp;
  if (wall_time_ms) j["wall_time_ms"] = *wall_time_ms;
  return j;
}

nlohmann::ordered_json comparison_to_json(const ComparisonTable& table, const std::string& model,
                                          const std::string& backend,
                                          std::optional<double> wall_time_ms) {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["method"] = "compare";
  j["backend"] = backend;
  j["truth"] = table.truth;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json jr;
    jr["epsilon"] = row.target_error;
    jr["mc_shots"] = row.mc_shots;
    jr["mc_achieved_error"] = row.mc_achieved_error;
    jr["qae_phase_qubits"] = row.qae_phase_qubits;
    jr["qae_oracle_queries"] = row.qae_oracle_queries;
    jr["qae_achieved_error"] = row.qae_achieved_error;
    rows.push_back(std::move(jr));
  }
  auto& mc_points = j["mc_points"] = nlohmann::ordered_json::array();
  for (const auto& point : table.mc_points) {
    mc_points.push_back({{"shots", point.shots}, {"median_abs_error", point.median_abs_error}});
  }
  auto& qae_points = j["qae_points"] = nlohmann::ordered_json::array();
  for (const auto& [queries, error] : table.qae_points) {
    qae_points.push_back({{"oracle_queries", queries}, {"modal_error", error}});
  }
  j["mc_slope"] = table.mc_slope;
  j["qae_slope"] = table.qae_slope;
  j["seed"] = table.seed;
  j["rng"] = kRngAlgorithm;
  if (wall_time_ms) j["wall_time_ms"] = *wall_time_ms;
  return j;
}

std::string comparison_to_csv(const ComparisonTable& table) {
  std::string out =
      "epsilon,mc_shots,mc_achieved_error,qae_phase_qubits,qae_oracle_queries,"
      "qae_achieved_error\n";
  for (const auto& row : table.rows) {
    out += fmt_double(row.target_error);
    out += ',' + std::to_string(row.mc_shots);
    out += ',' + fmt_double(row.mc_achieved_error);
    out += ',' + std::to_string(row.qae_phase_qubits);
    out += ',' + std::to_string(row.qae_oracle_queries);
    out += ',' + fmt_double(row.qae_achieved_error);
    out += '\n';
  }
  out += "# truth," + fmt_double(table.truth) + "\n";
  out += "# mc_slope," + fmt_double(table.mc_slope) + "\n";
  out += "# qae_slope," + fmt_double(table.qae_slope) + "\n";
  return out;
}

}  // namespace qtwin
