#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qtwin {

struct ComponentSpec {
  std::string id;
  double availability = 0.0;            // P(in service), in [0,1]
  std::optional<double> capacity;       // MW, only used by capacity structures
};

// Boolean structure function over component states, as a tree. Leaves name
// components; SERIES/PARALLEL are kept distinct from AND/OR so a parsed model
// serializes back to what was written, but they evaluate identically.
struct StructureNode {
  enum class Kind {
    Leaf,
    And,
    Or,
    Not,
    KOfN,
    Series,
    Parallel,
    CapacityThreshold,
  };

  Kind kind = Kind::Leaf;
  std::string leaf_id;                  // Leaf only
  std::uint32_t leaf_index = 0;         // resolved during validation
  std::vector<StructureNode> children;  // And/Or/Not/KOfN/Series/Parallel
  std::uint32_t k = 0;                  // KOfN only
  double demand = 0.0;                  // CapacityThreshold only
};

// Ordered component states; bit i refers to component i in model order
// (true = in service). The same ordering defines qubit indices downstream.
struct ComponentState {
  std::vector<bool> bits;

  static ComponentState from_mask(std::uint64_t mask, std::uint32_t n);
  std::uint64_t to_mask() const;
};

class ReliabilityModel {
 public:
  static constexpr std::uint32_t kDefaultEnumerationCap = 24;

  // Validates invariants (unique ids, availability bounds, leaf resolution,
  // k ranges, capacity coverage) and resolves leaf ids to component indices.
  // Throws ValidationError with a diagnostic naming the offending element.
  ReliabilityModel(std::vector<ComponentSpec> components, StructureNode structure,
                   std::uint32_t enumeration_cap = kDefaultEnumerationCap);

  std::uint32_t component_count() const { return static_cast<std::uint32_t>(components_.size()); }
  const std::vector<ComponentSpec>& components() const { return components_; }
  const StructureNode& structure() const { return structure_; }
  bool has_capacity_node() const { return has_capacity_node_; }

  // phi(x) for a packed component state (bit i = component i).
  bool evaluate_mask(std::uint64_t state_mask) const;

  // phi(x) for an explicit state; state length must equal component_count().
  bool evaluate(const ComponentState& state) const;

  // Product law for independent two-state components:
  // prod_i p_i^{x_i} (1-p_i)^{1-x_i}.
  double state_probability_mask(std::uint64_t state_mask) const;
  double state_probability(const ComponentState& state) const;

 private:
  std::vector<ComponentSpec> components_;
  StructureNode structure_;
  bool has_capacity_node_ = false;
};

// Parses the JSON model format. Throws ValidationError on malformed input
// with a diagnostic naming the offending element.
ReliabilityModel parse_model(const std::string& text);

// Inverse of parse_model up to JSON formatting: parse(serialize(m)) == m.
std::string serialize_model(const ReliabilityModel& model);

}  // namespace qtwin
