// qtwin: reliability assessment of component systems on a simulated quantum
// computer, with classical enumeration and Monte Carlo baselines.
//
// Machine-readable output goes to stdout (one JSON document, or CSV for
// `compare --format csv`); human-readable notes go to stderr. Exit codes:
// 0 success, 2 input/usage error, 3 resource cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtwin/classical.hpp"
#include "qtwin/errors.hpp"
#include "qtwin/relmodel.hpp"
#include "qtwin/report.hpp"
#include "qtwin/rng.hpp"
#include "qtwin/twin.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qtwin::ValidationError("cannot read model file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

qtwin::ReliabilityModel load_model(const std::string& path) {
  return qtwin::parse_model(read_file(path));
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

class WallClock {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

struct AssessOptions {
  std::string model_path;
  std::string method;
  std::string oracle = "semantic";
  std::uint64_t shots = 100000;
  bool shots_given = false;
  std::optional<std::uint64_t> seed;
  std::uint32_t phase_qubits = 6;
  std::optional<double> noise;
  std::uint64_t trajectories = 1000;
  bool no_timestamp = false;
};

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  const std::uint64_t generated = fresh_seed();
  std::cerr << "note: no --seed given; using generated seed " << generated << "\n";
  return generated;
}

int run_assess(const AssessOptions& opt) {
  const WallClock clock;
  const qtwin::ReliabilityModel model = load_model(opt.model_path);

  qtwin::AssessmentReport report;
  report.model = opt.model_path;
  report.method = opt.method;

  if (opt.noise && opt.method != "twin") {
    throw qtwin::ValidationError("--noise applies only to --method twin");
  }

  if (opt.method == "exact") {
    const qtwin::ExactResult exact = qtwin::exact_reliability(model);
    report.estimate = exact.reliability;
    report.uncertainty = 0.0;
    report.oracle_queries = exact.states_enumerated;
    if (model.has_capacity_node()) report.lolp = exact.lolp;
  } else if (opt.method == "mc") {
    const std::uint64_t seed = resolve_seed(opt.seed);
    const qtwin::MonteCarloResult mc = qtwin::monte_carlo(model, opt.shots, seed);
    report.estimate = mc.estimate;
    report.uncertainty = mc.stderr_;
    report.oracle_queries = mc.shots;
    report.shots = mc.shots;
    report.seed = mc.seed;
    report.rng = qtwin::kRngAlgorithm;
    if (model.has_capacity_node()) report.lolp = 1.0 - mc.estimate;
    std::cerr << "mc: estimate " << mc.estimate << ", 95% ci [" << mc.ci95_low << ", "
              << mc.ci95_high << "]\n";
  } else if (opt.method == "twin" || opt.method == "twin-sample" || opt.method == "qae") {
    const qtwin::OracleBackend backend = qtwin::parse_oracle_backend(opt.oracle);
    if (opt.method == "twin") {
      const qtwin::Twin twin = qtwin::build_twin(model, backend);
      report.backend = opt.oracle;
      report.layout = twin.layout;
      report.semantic_oracle = twin.circuit.contains_predicate_oracle();
      report.gate_counts = qtwin::gate_stats(twin.circuit);
      report.oracle_queries = 1;
      if (opt.noise) {
        const std::uint64_t seed = resolve_seed(opt.seed);
        const qtwin::NoiseModel noise{*opt.noise, opt.trajectories};
        const qtwin::NoisyResult noisy =
            qtwin::run_noisy_detailed(twin.circuit, noise, twin.layout.output_qubit, seed);
        report.estimate = noisy.mean;
        report.uncertainty = noisy.stderr_of_mean;
        report.seed = seed;
        report.rng = qtwin::kRngAlgorithm;
        report.noise_lambda = noise.lambda;
        report.trajectories = noise.trajectories;
      } else {
        report.estimate = qtwin::assess_exact(model, backend);
        report.uncertainty = 0.0;
      }
    } else if (opt.method == "twin-sample") {
      const std::uint64_t seed = resolve_seed(opt.seed);
      const qtwin::Twin twin = qtwin::build_twin(model, backend);
      const qtwin::SamplingAssessment sampled =
          qtwin::assess_sampling(model, backend, opt.shots, seed);
      report.backend = opt.oracle;
      report.estimate = sampled.estimate;
      report.uncertainty = sampled.stderr_;
      report.layout = twin.layout;
      report.semantic_oracle = twin.circuit.contains_predicate_oracle();
      report.gate_counts = qtwin::gate_stats(twin.circuit);
      report.oracle_queries = 1;
      report.shots = sampled.shots;
      report.seed = sampled.seed;
      report.rng = qtwin::kRngAlgorithm;
    } else {
      const bool sampling = opt.shots_given;
      std::optional<std::uint64_t> seed;
      if (sampling) seed = resolve_seed(opt.seed);
      const qtwin::Twin twin = qtwin::build_twin(model, backend, opt.phase_qubits);
      const qtwin::AmplitudeEstimate est = qtwin::qae(model, backend, opt.phase_qubits,
                                                      seed.value_or(0), sampling ? opt.shots : 0);
      report.backend = opt.oracle;
      report.estimate = est.estimate;
      report.uncertainty = est.error_bound;
      report.layout = twin.layout;
      report.semantic_oracle = twin.circuit.contains_predicate_oracle();
      report.gate_counts = qtwin::gate_stats(twin.circuit);
      report.oracle_queries = est.oracle_queries;
      report.phase_qubits = est.phase_qubits;
      report.modal_outcome = est.modal_outcome;
      if (sampling) {
        report.shots = opt.shots;
        report.seed = seed;
        report.rng = qtwin::kRngAlgorithm;
      }
    }
    if (model.has_capacity_node()) report.lolp = 1.0 - report.estimate;
  } else {
    throw qtwin::ValidationError("unknown method \"" + opt.method +
                                 "\" (expected exact, mc, twin, twin-sample, or qae)");
  }

  if (!opt.no_timestamp) report.wall_time_ms = clock.elapsed_ms();
  std::cout << report.to_json().dump(2) << "\n";
  if (model.has_capacity_node() && report.lolp) {
    std::cerr << "lolp: " << *report.lolp << "\n";
  }
  return kExitOk;
}

struct CompareOptions {
  std::string model_path;
  std::string oracle = "semantic";
  std::vector<double> target_errors;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  bool no_timestamp = false;
};

int run_compare(const CompareOptions& opt) {
  const WallClock clock;
  if (opt.target_errors.empty()) {
    throw qtwin::ValidationError("compare requires at least one --target-error");
  }
  const qtwin::ReliabilityModel model = load_model(opt.model_path);
  const qtwin::OracleBackend backend = qtwin::parse_oracle_backend(opt.oracle);
  const std::uint64_t seed = resolve_seed(opt.seed);
  const qtwin::ComparisonTable table =
      qtwin::sample_complexity_compare(model, backend, opt.target_errors, seed);

  if (opt.format == "csv") {
    std::cout << qtwin::comparison_to_csv(table);
  } else if (opt.format == "json") {
    std::optional<double> wall;
    if (!opt.no_timestamp) wall = clock.elapsed_ms();
    std::cout << qtwin::comparison_to_json(table, opt.model_path, opt.oracle, wall).dump(2)
              << "\n";
  } else {
    throw qtwin::ValidationError("unknown format \"" + opt.format + "\" (expected json or csv)");
  }
  std::cerr << "compare: truth " << table.truth << ", mc slope " << table.mc_slope
            << ", qae slope " << table.qae_slope << "\n";
  return kExitOk;
}

int run_validate(const std::string& path) {
  const qtwin::ReliabilityModel model = load_model(path);
  std::cout << "OK: " << path << ": " << model.component_count()
            << " components, structure valid\n";
  return kExitOk;
}

int run_dump_circuit(const std::string& path, const std::string& oracle) {
  const qtwin::ReliabilityModel model = load_model(path);
  const qtwin::OracleBackend backend = qtwin::parse_oracle_backend(oracle);
  const qtwin::Twin twin = qtwin::build_twin(model, backend);
  std::cout << qtwin::dump_circuit(twin.circuit);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-twin reliability assessment of component systems"};
  app.require_subcommand(1);

  std::string validate_model;
  CLI::App* validate = app.add_subcommand("validate", "Check a model file");
  validate->add_option("--model", validate_model, "Model file (JSON)")->required();

  AssessOptions assess_opt;
  CLI::App* assess = app.add_subcommand("assess", "Assess system reliability");
  assess->add_option("--model", assess_opt.model_path, "Model file (JSON)")->required();
  assess->add_option("--method", assess_opt.method, "exact | mc | twin | twin-sample | qae")
      ->required();
  assess->add_option("--oracle", assess_opt.oracle, "tree | minterm | semantic");
  assess->add_option("--shots", assess_opt.shots, "Shot count for sampling methods")
      ->check(CLI::PositiveNumber);
  assess->add_option("--seed", assess_opt.seed, "RNG seed (generated and printed if absent)");
  assess->add_option("--phase-qubits", assess_opt.phase_qubits, "Phase register size for qae")
      ->check(CLI::PositiveNumber);
  assess->add_option("--noise", assess_opt.noise, "Depolarizing probability per qubit per gate")
      ->check(CLI::Range(0.0, 1.0));
  assess->add_option("--trajectories", assess_opt.trajectories, "Noise trajectory count")
      ->check(CLI::PositiveNumber);
  assess->add_flag("--no-timestamp", assess_opt.no_timestamp, "Omit wall_time_ms from the report");

  CompareOptions compare_opt;
  CLI::App* compare =
      app.add_subcommand("compare", "Monte Carlo vs amplitude estimation resource comparison");
  compare->add_option("--model", compare_opt.model_path, "Model file (JSON)")->required();
  compare->add_option("--oracle", compare_opt.oracle, "tree | minterm | semantic");
  compare->add_option("--target-error", compare_opt.target_errors, "Target error (repeatable)");
  compare->add_option("--seed", compare_opt.seed, "RNG seed (generated and printed if absent)");
  compare->add_option("--format", compare_opt.format, "json | csv");
  compare->add_flag("--no-timestamp", compare_opt.no_timestamp,
                    "Omit wall_time_ms from the report");

  std::string dump_model;
  std::string dump_oracle = "tree";
  CLI::App* dump = app.add_subcommand("dump-circuit", "Print the synthesized twin circuit");
  dump->add_option("--model", dump_model, "Model file (JSON)")->required();
  dump->add_option("--oracle", dump_oracle, "tree | minterm | semantic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return run_validate(validate_model);
    if (assess->parsed()) {
      assess_opt.shots_given = assess->count("--shots") > 0;
      return run_assess(assess_opt);
    }
    if (compare->parsed()) return run_compare(compare_opt);
    if (dump->parsed()) return run_dump_circuit(dump_model, dump_oracle);
  } catch (const qtwin::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const qtwin::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
