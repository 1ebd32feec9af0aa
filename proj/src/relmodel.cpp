#include "qtwin/relmodel.hpp"

#include <unordered_map>

#include <json.hpp>

#include "qtwin/errors.hpp"

namespace qtwin {

namespace {

using Kind = StructureNode::Kind;

void validate_node(StructureNode& node,
                   const std::unordered_map<std::string, std::uint32_t>& index_of) {
  switch (node.kind) {
    case Kind::Leaf: {
      auto it = index_of.find(node.leaf_id);
      if (it == index_of.end()) {
        throw ValidationError("structure references undeclared component \"" + node.leaf_id + "\"");
      }
      node.leaf_index = it->second;
      break;
    }
    case Kind::Not:
      if (node.children.size() != 1) {
        throw ValidationError("not node requires exactly one child, got " +
                              std::to_string(node.children.size()));
      }
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Series:
    case Kind::Parallel:
      if (node.children.empty()) {
        throw ValidationError("and/or/series/parallel node requires at least one child");
      }
      break;
    case Kind::KOfN:
      if (node.children.empty()) {
        throw ValidationError("kofn node requires at least one child");
      }
      if (node.k < 1 || node.k > node.children.size()) {
        throw ValidationError("kofn node: k=" + std::to_string(node.k) + " out of range [1, " +
                              std::to_string(node.children.size()) + "]");
      }
      break;
    case Kind::CapacityThreshold:
      if (node.demand < 0.0) {
        throw ValidationError("capacity node: demand must be nonnegative");
      }
      break;
  }
  for (auto& child : node.children) validate_node(child, index_of);
}

bool contains_capacity_node(const StructureNode& node) {
  if (node.kind == Kind::CapacityThreshold) return true;
  for (const auto& child : node.children) {
    if (contains_capacity_node(child)) return true;
  }
  return false;
}

bool eval_node(const StructureNode& node, std::uint64_t state,
               const std::vector<ComponentSpec>& components) {
  switch (node.kind) {
    case Kind::Leaf:
      return (state >> node.leaf_index) & 1u;
    case Kind::And:
    case Kind::Series:
      for (const auto& child : node.children) {
        if (!eval_node(child, state, components)) return false;
      }
      return true;
    case Kind::Or:
    case Kind::Parallel:
      for (const auto& child : node.children) {
        if (eval_node(child, state, components)) return true;
      }
      return false;
    case Kind::Not:
      return !eval_node(node.children.front(), state, components);
    case Kind::KOfN: {
      std::uint32_t up = 0;
      for (const auto& child : node.children) {
        if (eval_node(child, state, components)) ++up;
      }
      return up >= node.k;
    }
    case Kind::CapacityThreshold: {
      double available = 0.0;
      for (std::size_t i = 0; i < components.size(); ++i) {
        if ((state >> i) & 1u) available += components[i].capacity.value_or(0.0);
      }
      return available >= node.demand;  // meeting demand exactly counts as success
    }
  }
  return false;
}

}  // namespace

ComponentState ComponentState::from_mask(std::uint64_t mask, std::uint32_t n) {
  ComponentState state;
  state.bits.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) state.bits[i] = (mask >> i) & 1u;
  return state;
}

std::uint64_t ComponentState::to_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

ReliabilityModel::ReliabilityModel(std::vector<ComponentSpec> components, StructureNode structure,
                                   std::uint32_t enumeration_cap)
    : components_(std::move(components)), structure_(std::move(structure)) {
  if (components_.empty()) {
    throw ValidationError("model must declare at least one component");
  }
  if (components_.size() > enumeration_cap) {
    throw ResourceError("model has " + std::to_string(components_.size()) +
                        " components; enumeration cap is " + std::to_string(enumeration_cap));
  }

  std::unordered_map<std::string, std::uint32_t> index_of;
  for (std::uint32_t i = 0; i < components_.size(); ++i) {
    const auto& comp = components_[i];
    if (comp.id.empty()) {
      throw ValidationError("component " + std::to_string(i) + " has an empty id");
    }
    if (!index_of.emplace(comp.id, i).second) {
      throw ValidationError("duplicate component id \"" + comp.id + "\"");
    }
    if (!(comp.availability >= 0.0 && comp.availability <= 1.0)) {
      throw ValidationError("component \"" + comp.id + "\": availability " +
                            std::to_string(comp.availability) + " outside [0, 1]");
    }
    if (comp.capacity && *comp.capacity < 0.0) {
      throw ValidationError("component \"" + comp.id + "\": capacity must be nonnegative");
    }
  }

  validate_node(structure_, index_of);

  has_capacity_node_ = contains_capacity_node(structure_);
  if (has_capacity_node_) {
    for (const auto& comp : components_) {
      if (!comp.capacity) {
        throw ValidationError("capacity node: component \"" + comp.id +
                              "\" carries no capacity");
      }
    }
  }
}

bool ReliabilityModel::evaluate_mask(std::uint64_t state_mask) const {
  return eval_node(structure_, state_mask, components_);
}

bool ReliabilityModel::evaluate(const ComponentState& state) const {
  if (state.bits.size() != components_.size()) {
    throw ValidationError("state has " + std::to_string(state.bits.size()) +
                          " bits; model has " + std::to_string(components_.size()) +
                          " components");
  }
  return evaluate_mask(state.to_mask());
}

double ReliabilityModel::state_probability_mask(std::uint64_t state_mask) const {
  double p = 1.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const double a = components_[i].availability;
    p *= ((state_mask >> i) & 1u) ? a : (1.0 - a);
  }
  return p;
}

double ReliabilityModel::state_probability(const ComponentState& state) const {
  if (state.bits.size() != components_.size()) {
    throw ValidationError("state has " + std::to_string(state.bits.size()) +
                          " bits; model has " + std::to_string(components_.size()) +
                          " components");
  }
  return state_probability_mask(state.to_mask());
}

namespace {

StructureNode parse_node(const nlohmann::json& j) {
  if (j.is_string()) {
    StructureNode leaf;
    leaf.kind = Kind::Leaf;
    leaf.leaf_id = j.get<std::string>();
    return leaf;
  }
  if (!j.is_object()) {
    throw ValidationError("structure node must be an object or a component id string");
  }
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ValidationError("structure node is missing a \"type\" string");
  }
  const std::string type = j["type"].get<std::string>();

  StructureNode node;
  if (type == "and") node.kind = Kind::And;
  else if (type == "or") node.kind = Kind::Or;
  else if (type == "not") node.kind = Kind::Not;
  else if (type == "series") node.kind = Kind::Series;
  else if (type == "parallel") node.kind = Kind::Parallel;
  else if (type == "kofn") node.kind = Kind::KOfN;
  else if (type == "capacity") node.kind = Kind::CapacityThreshold;
  else throw ValidationError("unknown structure node type \"" + type + "\"");

  if (node.kind == Kind::CapacityThreshold) {
    if (!j.contains("demand") || !j["demand"].is_number()) {
      throw ValidationError("capacity node requires a numeric \"demand\"");
    }
    node.demand = j["demand"].get<double>();
    return node;
  }

  if (!j.contains("of") || !j["of"].is_array()) {
    throw ValidationError("\"" + type + "\" node requires an \"of\" array");
  }
  for (const auto& child : j["of"]) node.children.push_back(parse_node(child));

  if (node.kind == Kind::KOfN) {
    if (!j.contains("k") || !j["k"].is_number_integer()) {
      throw ValidationError("kofn node requires an integer \"k\"");
    }
    const auto k = j["k"].get<std::int64_t>();
    if (k < 0) throw ValidationError("kofn node: k must be positive");
    node.k = static_cast<std::uint32_t>(k);
  }
  return node;
}

nlohmann::ordered_json serialize_node(const StructureNode& node) {
  nlohmann::ordered_json j;
  switch (node.kind) {
    case Kind::Leaf:
      return node.leaf_id;
    case Kind::And: j["type"] = "and"; break;
    case Kind::Or: j["type"] = "or"; break;
    case Kind::Not: j["type"] = "not"; break;
    case Kind::Series: j["type"] = "series"; break;
    case Kind::Parallel: j["type"] = "parallel"; break;
    case Kind::KOfN: j["type"] = "kofn"; break;
    case Kind::CapacityThreshold:
      j["type"] = "capacity";
      j["demand"] = node.demand;
      return j;
  }
  if (node.kind == Kind::KOfN) j["k"] = node.k;
  auto& of = j["of"] = nlohmann::ordered_json::array();
  for (const auto& child : node.children) of.push_back(serialize_node(child));
  return j;
}

}  // namespace

ReliabilityModel parse_model(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("model file must hold a JSON object");
  if (!doc.contains("components") || !doc["components"].is_array()) {
    throw ValidationError("model requires a \"components\" array");
  }
  if (!doc.contains("structure")) {
    throw ValidationError("model requires a \"structure\" node");
  }

  std::vector<ComponentSpec> components;
  for (const auto& c : doc["components"]) {
    if (!c.is_object()) throw ValidationError("each component must be an object");
    ComponentSpec spec;
    if (!c.contains("id") || !c["id"].is_string()) {
      throw ValidationError("component is missing a string \"id\"");
    }
    spec.id = c["id"].get<std::string>();
    if (!c.contains("availability") || !c["availability"].is_number()) {
      throw ValidationError("component \"" + spec.id + "\" is missing a numeric \"availability\"");
    }
    spec.availability = c["availability"].get<double>();
    if (c.contains("capacity")) {
      if (!c["capacity"].is_number()) {
        throw ValidationError("component \"" + spec.id + "\": capacity must be a number");
      }
      spec.capacity = c["capacity"].get<double>();
    }
    components.push_back(std::move(spec));
  }

  StructureNode structure = parse_node(doc["structure"]);
  return ReliabilityModel(std::move(components), std::move(structure));
}

std::string serialize_model(const ReliabilityModel& model) {
  nlohmann::ordered_json doc;
  auto& comps = doc["components"] = nlohmann::ordered_json::array();
  for (const auto& c : model.components()) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["availability"] = c.availability;
    if (c.capacity) jc["capacity"] = *c.capacity;
    comps.push_back(std::move(jc));
  }
  doc["structure"] = serialize_node(model.structure());
  return doc.dump(2) + "\n";
}

}  // namespace qtwin
