#include "qtwin/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "qtwin/errors.hpp"

namespace qtwin {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::RY: return "RY";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::Phase: return "PHASE";
    case GateKind::CX: return "CX";
    case GateKind::CCX: return "CCX";
    case GateKind::MCX: return "MCX";
    case GateKind::MCZ: return "MCZ";
    case GateKind::Swap: return "SWAP";
    case GateKind::CPhase: return "CPHASE";
    case GateKind::PredicateOracle: return "PREDICATE_ORACLE";
  }
  return "?";
}

namespace {

Gate make(GateKind kind, std::vector<std::uint32_t> qubits, double angle = 0.0,
          std::shared_ptr<const OraclePredicate> predicate = nullptr) {
  Gate g;
  g.kind = kind;
  g.qubits = std::move(qubits);
  g.angle = angle;
  g.predicate = std::move(predicate);
  return g;
}

}  // namespace

Gate Gate::ry(std::uint32_t target, double theta) { return make(GateKind::RY, {target}, theta); }
Gate Gate::x(std::uint32_t target) { return make(GateKind::X, {target}); }
Gate Gate::y(std::uint32_t target) { return make(GateKind::Y, {target}); }
Gate Gate::z(std::uint32_t target) { return make(GateKind::Z, {target}); }
Gate Gate::h(std::uint32_t target) { return make(GateKind::H, {target}); }
Gate Gate::phase(std::uint32_t target, double phi) { return make(GateKind::Phase, {target}, phi); }
Gate Gate::cx(std::uint32_t control, std::uint32_t target) {
  return make(GateKind::CX, {control, target});
}
Gate Gate::ccx(std::uint32_t c1, std::uint32_t c2, std::uint32_t target) {
  return make(GateKind::CCX, {std::min(c1, c2), std::max(c1, c2), target});
}
Gate Gate::mcx(std::vector<std::uint32_t> controls, std::uint32_t target) {
  std::sort(controls.begin(), controls.end());
  controls.push_back(target);
  return make(GateKind::MCX, std::move(controls));
}
Gate Gate::mcz(std::vector<std::uint32_t> qubits) {
  std::sort(qubits.begin(), qubits.end());
  return make(GateKind::MCZ, std::move(qubits));
}
Gate Gate::swap(std::uint32_t a, std::uint32_t b) {
  return make(GateKind::Swap, {std::min(a, b), std::max(a, b)});
}
Gate Gate::cphase(std::uint32_t control, std::uint32_t target, double phi) {
  return make(GateKind::CPhase, {control, target}, phi);
}
Gate Gate::predicate_oracle(std::vector<std::uint32_t> inputs, std::uint32_t target,
                            std::shared_ptr<const OraclePredicate> predicate) {
  if (!predicate) throw ValidationError("predicate oracle gate requires a predicate");
  if (predicate->input_count() != inputs.size()) {
    throw ValidationError("predicate oracle gate: predicate expects " +
                          std::to_string(predicate->input_count()) + " inputs, got " +
                          std::to_string(inputs.size()));
  }
  inputs.push_back(target);
  return make(GateKind::PredicateOracle, std::move(inputs), 0.0, std::move(predicate));
}

std::uint32_t Gate::max_qubit() const {
  return *std::max_element(qubits.begin(), qubits.end());
}

bool Gate::operator==(const Gate& other) const {
  return kind == other.kind && qubits == other.qubits && angle == other.angle &&
         predicate == other.predicate;
}

Circuit::Circuit(std::uint32_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0) throw ValidationError("circuit requires at least one qubit");
}

bool Circuit::contains_predicate_oracle() const {
  return std::any_of(gates_.begin(), gates_.end(),
                     [](const Gate& g) { return g.kind == GateKind::PredicateOracle; });
}

void Circuit::append(Gate gate) {
  if (gate.qubits.empty()) throw ValidationError("gate touches no qubits");
  std::unordered_set<std::uint32_t> seen;
  for (std::uint32_t q : gate.qubits) {
    if (q >= num_qubits_) {
      throw ValidationError(std::string(gate_kind_name(gate.kind)) + " gate references qubit " +
                            std::to_string(q) + " in a " + std::to_string(num_qubits_) +
                            "-qubit circuit");
    }
    if (!seen.insert(q).second) {
      throw ValidationError(std::string(gate_kind_name(gate.kind)) +
                            " gate repeats qubit " + std::to_string(q));
    }
  }
  gates_.push_back(std::move(gate));
}

bool Circuit::operator==(const Circuit& other) const {
  return num_qubits_ == other.num_qubits_ && gates_ == other.gates_;
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ValidationError("cannot compose circuits with " + std::to_string(a.num_qubits()) +
                          " and " + std::to_string(b.num_qubits()) + " qubits");
  }
  Circuit out(a.num_qubits());
  for (const auto& g : a.gates()) out.append(g);
  for (const auto& g : b.gates()) out.append(g);
  return out;
}

Gate inverse_gate(const Gate& gate) {
  Gate inv = gate;
  switch (gate.kind) {
    case GateKind::RY:
    case GateKind::Phase:
    case GateKind::CPhase:
      inv.angle = -gate.angle;
      break;
    default:
      break;  // self-inverse
  }
  return inv;
}

Circuit inverse(const Circuit& circuit) {
  Circuit out(circuit.num_qubits());
  const auto& gates = circuit.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.append(inverse_gate(*it));
  return out;
}

GateStats gate_stats(const Circuit& circuit) {
  GateStats stats;
  stats.num_qubits = circuit.num_qubits();
  for (const auto& g : circuit.gates()) {
    ++stats.by_kind[gate_kind_name(g.kind)];
    ++stats.total;
  }
  return stats;
}

std::string dump_circuit(const Circuit& circuit) {
  std::string out = "qubits: " + std::to_string(circuit.num_qubits()) + "\n";
  char buf[64];
  for (const auto& g : circuit.gates()) {
    out += gate_kind_name(g.kind);
    out += ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) out += ',';
      out += "q[" + std::to_string(g.qubits[i]) + "]";
    }
    switch (g.kind) {
      case GateKind::RY:
      case GateKind::Phase:
      case GateKind::CPhase:
        std::snprintf(buf, sizeof buf, " (%.12g)", g.angle);
        out += buf;
        break;
      case GateKind::PredicateOracle:
        out += " {" + g.predicate->label() + "}";
        break;
      default:
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace qtwin
