#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qtwin {

// Semantic oracle predicate over an ordered set of input qubits. Bit j of the
// argument is the value of the gate's inputs[j]. Implementations must be
// immutable; gates referencing the same object compare equal.
class OraclePredicate {
 public:
  virtual ~OraclePredicate() = default;
  virtual bool eval(std::uint64_t input_bits) const = 0;
  virtual std::uint32_t input_count() const = 0;
  virtual std::string label() const = 0;
};

enum class GateKind {
  RY,
  X,
  Y,
  Z,
  H,
  Phase,
  CX,
  CCX,
  MCX,
  MCZ,
  Swap,
  CPhase,
  PredicateOracle,
};

const char* gate_kind_name(GateKind kind);

// One reversible gate. Qubit layout by kind:
//   RY/X/Y/Z/H/Phase      {target}
//   CX                    {control, target}
//   CCX                   {control, control, target}
//   MCX                   {controls..., target}   (controls sorted)
//   MCZ                   {qubits...}              (sorted; symmetric)
//   Swap                  {a, b}                   (sorted; symmetric)
//   CPhase                {control, target}        (symmetric up to phase)
//   PredicateOracle       {inputs..., target}      (input order is semantic)
struct Gate {
  GateKind kind;
  std::vector<std::uint32_t> qubits;
  double angle = 0.0;
  std::shared_ptr<const OraclePredicate> predicate;

  static Gate ry(std::uint32_t target, double theta);
  static Gate x(std::uint32_t target);
  static Gate y(std::uint32_t target);
  static Gate z(std::uint32_t target);
  static Gate h(std::uint32_t target);
  static Gate phase(std::uint32_t target, double phi);
  static Gate cx(std::uint32_t control, std::uint32_t target);
  static Gate ccx(std::uint32_t c1, std::uint32_t c2, std::uint32_t target);
  static Gate mcx(std::vector<std::uint32_t> controls, std::uint32_t target);
  static Gate mcz(std::vector<std::uint32_t> qubits);
  static Gate swap(std::uint32_t a, std::uint32_t b);
  static Gate cphase(std::uint32_t control, std::uint32_t target, double phi);
  static Gate predicate_oracle(std::vector<std::uint32_t> inputs, std::uint32_t target,
                               std::shared_ptr<const OraclePredicate> predicate);

  std::uint32_t target() const { return qubits.back(); }
  std::uint32_t max_qubit() const;

  bool operator==(const Gate& other) const;
};

struct GateStats {
  std::map<std::string, std::uint64_t> by_kind;
  std::uint64_t total = 0;
  std::uint32_t num_qubits = 0;
};

class Circuit {
 public:
  explicit Circuit(std::uint32_t num_qubits);

  std::uint32_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool contains_predicate_oracle() const;

  // Appends after validating indices against num_qubits; throws
  // ValidationError on out-of-range or duplicated indices.
  void append(Gate gate);

  bool operator==(const Circuit& other) const;

 private:
  std::uint32_t num_qubits_;
  std::vector<Gate> gates_;
};

// Gates of a followed by gates of b; qubit counts must match.
Circuit compose(const Circuit& a, const Circuit& b);

// Reversed gate order with per-gate inversion: rotations negate their angle,
// everything else in this gate set is self-inverse. An involution.
Circuit inverse(const Circuit& circuit);

Gate inverse_gate(const Gate& gate);

GateStats gate_stats(const Circuit& circuit);

// Stable text dump, one gate per line: `GATE q[i],q[j],... (angle)`.
std::string dump_circuit(const Circuit& circuit);

}  // namespace qtwin
