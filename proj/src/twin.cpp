#include "qtwin/twin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qtwin/errors.hpp"
#include "qtwin/rng.hpp"

namespace qtwin {

namespace {

using Kind = StructureNode::Kind;

bool tree_synthesizable(const StructureNode& node) {
  switch (node.kind) {
    case Kind::Leaf:
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::Not:
    case Kind::Series:
    case Kind::Parallel:
      return std::all_of(node.children.begin(), node.children.end(), tree_synthesizable);
    case Kind::KOfN:
    case Kind::CapacityThreshold:
      return false;
  }
  return false;
}

// One ancilla per and/or node, one per negated leaf; a negation of a
// computed subterm flips that subterm's ancilla in place.
std::uint32_t tree_ancilla_count(const StructureNode& node) {
  switch (node.kind) {
    case Kind::Leaf:
      return 0;
    case Kind::Not:
      return node.children.front().kind == Kind::Leaf
                 ? 1
                 : tree_ancilla_count(node.children.front());
    case Kind::And:
    case Kind::Or:
    case Kind::Series:
    case Kind::Parallel: {
      std::uint32_t count = 1;
      for (const auto& child : node.children) count += tree_ancilla_count(child);
      return count;
    }
    case Kind::KOfN:
    case Kind::CapacityThreshold:
      return 0;
  }
  return 0;
}

class StructurePredicate final : public OraclePredicate {
 public:
  explicit StructurePredicate(std::shared_ptr<const ReliabilityModel> model)
      : model_(std::move(model)) {
    const std::uint32_t n = model_->component_count();
    if (n <= kTableBits) {
      table_.resize(std::uint64_t{1} << n);
      for (std::uint64_t x = 0; x < table_.size(); ++x) {
        table_[x] = model_->evaluate_mask(x) ? 1 : 0;
      }
    }
  }

  bool eval(std::uint64_t input_bits) const override {
    if (!table_.empty()) return table_[input_bits] != 0;
    return model_->evaluate_mask(input_bits);
  }

  std::uint32_t input_count() const override { return model_->component_count(); }
  std::string label() const override { return "structure"; }

 private:
  static constexpr std::uint32_t kTableBits = 20;
  std::shared_ptr<const ReliabilityModel> model_;
  std::vector<std::uint8_t> table_;
};

// Recursive and/or/not emitter. Returns the qubit holding the subterm value;
// leaves evaluate to their component qubit, internal nodes into a fresh
// ancilla. Inputs consumed through X-conjugation are restored immediately, so
// shared component qubits stay valid for sibling subterms.
class TreeSynthesizer {
 public:
  TreeSynthesizer(const TwinLayout& layout, Circuit& circuit)
      : layout_(layout), circuit_(circuit) {}

  std::uint32_t emit(const StructureNode& node) {
    switch (node.kind) {
      case Kind::Leaf:
        return layout_.component_qubits[node.leaf_index];
      case Kind::And:
      case Kind::Series: {
        const auto inputs = child_values(node);
        const std::uint32_t out = alloc();
        circuit_.append(Gate::mcx(inputs, out));
        return out;
      }
      case Kind::Or:
      case Kind::Parallel: {
        // De Morgan: OR(x...) = NOT(AND(NOT x...)).
        const auto inputs = child_values(node);
        const std::uint32_t out = alloc();
        for (std::uint32_t q : inputs) circuit_.append(Gate::x(q));
        circuit_.append(Gate::mcx(inputs, out));
        for (std::uint32_t q : inputs) circuit_.append(Gate::x(q));
        circuit_.append(Gate::x(out));
        return out;
      }
      case Kind::Not: {
        const StructureNode& child = node.children.front();
        if (child.kind == Kind::Leaf) {
          const std::uint32_t src = layout_.component_qubits[child.leaf_index];
          const std::uint32_t out = alloc();
          circuit_.append(Gate::cx(src, out));
          circuit_.append(Gate::x(out));
          return out;
        }
        const std::uint32_t value = emit(child);
        circuit_.append(Gate::x(value));
        return value;
      }
      case Kind::KOfN:
      case Kind::CapacityThreshold:
        throw ValidationError("tree backend cannot synthesize this structure");
    }
    throw ValidationError("tree backend cannot synthesize this structure");
  }

 private:
  std::uint32_t alloc() { return layout_.work_ancillas.at(next_ancilla_++); }

  std::vector<std::uint32_t> child_values(const StructureNode& node) {
    std::vector<std::uint32_t> values;
    values.reserve(node.children.size());
    for (const auto& child : node.children) values.push_back(emit(child));
    // A subterm repeated under one connective contributes a single control.
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
  }

  const TwinLayout& layout_;
  Circuit& circuit_;
  std::size_t next_ancilla_ = 0;
};

}  // namespace

std::vector<std::uint32_t> TwinLayout::assessment_register() const {
  std::vector<std::uint32_t> reg = component_qubits;
  reg.insert(reg.end(), work_ancillas.begin(), work_ancillas.end());
  reg.push_back(output_qubit);
  return reg;
}

const char* oracle_backend_name(OracleBackend backend) {
  switch (backend) {
    case OracleBackend::Tree: return "tree";
    case OracleBackend::Minterm: return "minterm";
    case OracleBackend::Semantic: return "semantic";
  }
  return "?";
}

OracleBackend parse_oracle_backend(const std::string& name) {
  if (name == "tree") return OracleBackend::Tree;
  if (name == "minterm") return OracleBackend::Minterm;
  if (name == "semantic") return OracleBackend::Semantic;
  throw ValidationError("unknown oracle backend \"" + name +
                        "\" (expected tree, minterm, or semantic)");
}

double encode_availability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("availability " + std::to_string(p) + " outside [0, 1]");
  }
  return 2.0 * std::asin(std::sqrt(p));
}

TwinLayout plan_layout(const ReliabilityModel& model, OracleBackend backend,
                       std::uint32_t phase_qubits) {
  const std::uint32_t n = model.component_count();
  TwinLayout layout;
  layout.component_qubits.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) layout.component_qubits[i] = i;

  std::uint32_t next = n;
  if (backend == OracleBackend::Tree) {
    const std::uint32_t ancillas = tree_ancilla_count(model.structure());
    layout.work_ancillas.resize(ancillas);
    for (std::uint32_t i = 0; i < ancillas; ++i) layout.work_ancillas[i] = next++;
  }
  layout.output_qubit = next++;
  layout.phase_register.resize(phase_qubits);
  for (std::uint32_t i = 0; i < phase_qubits; ++i) layout.phase_register[i] = next++;
  layout.total_qubits = next;
  return layout;
}

Circuit build_state_prep(const ReliabilityModel& model) {
  Circuit circuit(model.component_count());
  for (std::uint32_t i = 0; i < model.component_count(); ++i) {
    circuit.append(Gate::ry(i, encode_availability(model.components()[i].availability)));
  }
  return circuit;
}

std::shared_ptr<const OraclePredicate> make_structure_predicate(
    std::shared_ptr<const ReliabilityModel> model) {
  return std::make_shared<StructurePredicate>(std::move(model));
}

Circuit synthesize_oracle(const ReliabilityModel& model, OracleBackend backend,
                          const TwinLayout& layout) {
  Circuit oracle(layout.total_qubits);
  switch (backend) {
    case OracleBackend::Tree: {
      if (!tree_synthesizable(model.structure())) {
        throw ValidationError(
            "tree backend supports only and/or/not/series/parallel structures; "
            "use --oracle semantic for kofn and capacity nodes");
      }
      Circuit compute(layout.total_qubits);
      TreeSynthesizer synth(layout, compute);
      const std::uint32_t value_qubit = synth.emit(model.structure());
      oracle = compose(oracle, compute);
      oracle.append(Gate::cx(value_qubit, layout.output_qubit));
      oracle = compose(oracle, inverse(compute));
      break;
    }
    case OracleBackend::Minterm: {
      const std::uint32_t n = model.component_count();
      if (n > kMintermMaxComponents) {
        throw ValidationError("minterm backend supports at most " +
                              std::to_string(kMintermMaxComponents) + " components; model has " +
                              std::to_string(n));
      }
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        if (!model.evaluate_mask(x)) continue;
        for (std::uint32_t i = 0; i < n; ++i) {
          if (!((x >> i) & 1u)) oracle.append(Gate::x(layout.component_qubits[i]));
        }
        oracle.append(Gate::mcx(layout.component_qubits, layout.output_qubit));
        for (std::uint32_t i = 0; i < n; ++i) {
          if (!((x >> i) & 1u)) oracle.append(Gate::x(layout.component_qubits[i]));
        }
      }
      break;
    }
    case OracleBackend::Semantic: {
      auto predicate = make_structure_predicate(std::make_shared<ReliabilityModel>(model));
      oracle.append(Gate::predicate_oracle(layout.component_qubits, layout.output_qubit,
                                           std::move(predicate)));
      break;
    }
  }
  return oracle;
}

Twin build_twin(const ReliabilityModel& model, OracleBackend backend, std::uint32_t phase_qubits,
                std::uint32_t qubit_cap) {
  TwinLayout layout = plan_layout(model, backend, phase_qubits);
  if (layout.total_qubits > qubit_cap) {
    throw ResourceError("twin requires " + std::to_string(layout.total_qubits) +
                        " qubits; simulator cap is " + std::to_string(qubit_cap));
  }
  Circuit circuit(layout.total_qubits);
  const Circuit prep = build_state_prep(model);
  for (const auto& gate : prep.gates()) circuit.append(gate);
  circuit = compose(circuit, synthesize_oracle(model, backend, layout));
  return Twin{std::move(circuit), std::move(layout), backend};
}

double assess_exact(const ReliabilityModel& model, OracleBackend backend,
                    std::uint32_t qubit_cap) {
  const Twin twin = build_twin(model, backend, 0, qubit_cap);
  const StateVector state = run(twin.circuit, qubit_cap);
  return state.marginal_probability(twin.layout.output_qubit, 1);
}

SamplingAssessment assess_sampling(const ReliabilityModel& model, OracleBackend backend,
                                   std::uint64_t shots, std::uint64_t seed,
                                   std::uint32_t qubit_cap) {
  if (shots == 0) throw ValidationError("sampling assessment requires at least one shot");
  const Twin twin = build_twin(model, backend, 0, qubit_cap);
  const StateVector state = run(twin.circuit, qubit_cap);
  const SampleCounts counts = sample(state, {twin.layout.output_qubit}, shots, seed);
  std::uint64_t ones = 0;
  if (auto it = counts.counts.find("1"); it != counts.counts.end()) ones = it->second;
  SamplingAssessment result;
  result.estimate = static_cast<double>(ones) / static_cast<double>(shots);
  result.stderr_ =
      std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(shots));
  result.shots = shots;
  result.seed = seed;
  return result;
}

Circuit grover_operator(const Twin& twin) {
  const TwinLayout& layout = twin.layout;
  Circuit q(twin.circuit.num_qubits());

  // S_chi: phase flip of the output=0 subspace (X Z X on the output qubit).
  q.append(Gate::x(layout.output_qubit));
  q.append(Gate::z(layout.output_qubit));
  q.append(Gate::x(layout.output_qubit));

  // A^-1
  const Circuit a_inverse = inverse(twin.circuit);
  for (const auto& gate : a_inverse.gates()) q.append(gate);

  // S_0: reflection about the all-zero state of the assessment register.
  const auto reg = layout.assessment_register();
  for (std::uint32_t qubit : reg) q.append(Gate::x(qubit));
  q.append(Gate::mcz(reg));
  for (std::uint32_t qubit : reg) q.append(Gate::x(qubit));

  // A
  for (const auto& gate : twin.circuit.gates()) q.append(gate);
  return q;
}

Circuit make_qft(std::uint32_t num_qubits, const std::vector<std::uint32_t>& qubits) {
  Circuit circuit(num_qubits);
  const std::size_t m = qubits.size();
  for (std::size_t j = m; j-- > 0;) {
    circuit.append(Gate::h(qubits[j]));
    for (std::size_t k = j; k-- > 0;) {
      circuit.append(Gate::cphase(qubits[k], qubits[j],
                                  std::numbers::pi / static_cast<double>(1ull << (j - k))));
    }
  }
  for (std::size_t i = 0; i < m / 2; ++i) {
    circuit.append(Gate::swap(qubits[i], qubits[m - 1 - i]));
  }
  return circuit;
}

AmplitudeEstimate qae(const ReliabilityModel& model, OracleBackend backend,
                      std::uint32_t phase_qubits, std::uint64_t seed, std::uint64_t shots,
                      std::uint32_t qubit_cap) {
  if (phase_qubits == 0) throw ValidationError("amplitude estimation requires phase qubits");
  if (phase_qubits > 24) {
    throw ResourceError("phase register of " + std::to_string(phase_qubits) +
                        " qubits exceeds the supported 24");
  }
  const Twin twin = build_twin(model, backend, phase_qubits, qubit_cap);
  const Circuit grover = grover_operator(twin);
  const auto& phase = twin.layout.phase_register;

  StateVector state = StateVector::zero(twin.layout.total_qubits, qubit_cap);
  for (const auto& gate : twin.circuit.gates()) state.apply(gate);
  for (std::uint32_t qubit : phase) state.apply(Gate::h(qubit));

  // Controlled Q^(2^j) from phase qubit j, applied as 2^j controlled copies.
  for (std::size_t j = 0; j < phase.size(); ++j) {
    const std::uint64_t control = std::uint64_t{1} << phase[j];
    const std::uint64_t reps = std::uint64_t{1} << j;
    for (std::uint64_t r = 0; r < reps; ++r) {
      for (const auto& gate : grover.gates()) state.apply(gate, control);
    }
  }

  const Circuit iqft = inverse(make_qft(twin.layout.total_qubits, phase));
  for (const auto& gate : iqft.gates()) state.apply(gate);

  const std::uint64_t grid = std::uint64_t{1} << phase_qubits;
  std::uint64_t modal = 0;
  if (shots == 0) {
    const std::vector<double> dist = state.register_distribution(phase);
    double best = -1.0;
    for (std::uint64_t y = 0; y < grid; ++y) {
      if (dist[y] > best) {
        best = dist[y];
        modal = y;
      }
    }
  } else {
    const SampleCounts counts = sample(state, phase, shots, seed);
    std::uint64_t best = 0;
    for (const auto& [key, count] : counts.counts) {
      std::uint64_t y = 0;
      for (std::size_t j = 0; j < key.size(); ++j) {
        if (key[j] == '1') y |= std::uint64_t{1} << j;
      }
      if (count > best || (count == best && y < modal)) {
        best = count;
        modal = y;
      }
    }
  }

  AmplitudeEstimate estimate;
  estimate.phase_qubits = phase_qubits;
  estimate.modal_outcome = modal;
  const double s = std::sin(std::numbers::pi * static_cast<double>(modal) /
                            static_cast<double>(grid));
  estimate.estimate = s * s;
  estimate.oracle_queries = grid;  // 2^m - 1 controlled powers + the initial A
  estimate.error_bound = std::numbers::pi / static_cast<double>(grid) +
                         std::numbers::pi * std::numbers::pi /
                             (static_cast<double>(grid) * static_cast<double>(grid));
  return estimate;
}

ComparisonTable sample_complexity_compare(const ReliabilityModel& model, OracleBackend backend,
                                          const std::vector<double>& target_errors,
                                          std::uint64_t seed, std::uint32_t qubit_cap) {
  if (target_errors.empty()) {
    throw ValidationError("comparison requires at least one target error");
  }
  for (double eps : target_errors) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw ValidationError("target error " + std::to_string(eps) + " outside (0, 1)");
    }
  }

  ComparisonTable table;
  table.seed = seed;
  table.truth = exact_reliability(model).reliability;

  // Monte Carlo: doubling search for the smallest shot count whose median
  // absolute error over repeated seeds meets the target. Medians per shot
  // count are cached so every target sees the same measurements.
  constexpr std::uint64_t kMcRepeats = 11;
  constexpr std::uint64_t kMcShotCap = std::uint64_t{1} << 24;
  std::map<std::uint64_t, double> median_cache;
  auto median_error = [&](std::uint64_t shots, std::uint64_t level) {
    if (auto it = median_cache.find(shots); it != median_cache.end()) return it->second;
    std::vector<double> errors;
    errors.reserve(kMcRepeats);
    for (std::uint64_t r = 0; r < kMcRepeats; ++r) {
      const std::uint64_t run_seed = derive_seed(seed, level * 4096 + r);
      errors.push_back(std::abs(monte_carlo(model, shots, run_seed).estimate - table.truth));
    }
    std::sort(errors.begin(), errors.end());
    const double median = errors[kMcRepeats / 2];
    median_cache.emplace(shots, median);
    return median;
  };

  // Amplitude estimation per target: the smallest phase register whose
  // guaranteed bound meets the target; the realized modal error is reported
  // alongside (and is never worse than the bound on these models).
  std::map<std::uint32_t, AmplitudeEstimate> qae_cache;
  auto qae_at = [&](std::uint32_t m) -> const AmplitudeEstimate& {
    auto it = qae_cache.find(m);
    if (it == qae_cache.end()) {
      it = qae_cache.emplace(m, qae(model, backend, m, seed, 0, qubit_cap)).first;
    }
    return it->second;
  };

  for (double eps : target_errors) {
    ComparisonRow row;
    row.target_error = eps;

    std::uint64_t shots = 16;
    std::uint64_t level = 0;
    for (;; shots *= 2, ++level) {
      if (shots > kMcShotCap) {
        throw ResourceError("monte carlo search exceeded " + std::to_string(kMcShotCap) +
                            " shots before reaching target error " + std::to_string(eps));
      }
      const double err = median_error(shots, level);
      if (err <= eps) {
        row.mc_shots = shots;
        row.mc_achieved_error = err;
        break;
      }
    }

    std::uint32_t m = 1;
    while (std::numbers::pi / std::pow(2.0, m) +
               std::numbers::pi * std::numbers::pi / std::pow(4.0, m) >
           eps) {
      ++m;
      const TwinLayout probe = plan_layout(model, backend, m);
      if (probe.total_qubits > qubit_cap) {
        throw ResourceError("amplitude estimation for target error " + std::to_string(eps) +
                            " needs " + std::to_string(probe.total_qubits) +
                            " qubits; simulator cap is " + std::to_string(qubit_cap));
      }
    }
    const AmplitudeEstimate est = qae_at(m);
    row.qae_phase_qubits = m;
    row.qae_oracle_queries = est.oracle_queries;
    row.qae_achieved_error = std::abs(est.estimate - table.truth);
    table.rows.push_back(row);
  }

  // Fitted slopes: Monte Carlo error over shot decades, QAE modal error over
  // phase-register sizes.
  const ConvergenceSweep sweep = convergence_sweep(
      model, {100, 1000, 10000, 100000, 1000000}, 15, derive_seed(seed, 0xC0FFEE));
  table.mc_points = sweep.points;
  table.mc_slope = sweep.slope;

  std::vector<double> xs, ys;
  for (std::uint32_t m = 4; m <= 10; ++m) {
    if (plan_layout(model, backend, m).total_qubits > qubit_cap) break;
    const AmplitudeEstimate est = qae_at(m);
    const double err = std::abs(est.estimate - table.truth);
    table.qae_points.emplace_back(est.oracle_queries, err);
    xs.push_back(static_cast<double>(est.oracle_queries));
    ys.push_back(err);
  }
  table.qae_slope = log_log_slope(xs, ys);
  return table;
}

}  // namespace qtwin
