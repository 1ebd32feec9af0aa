#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "qtwin/errors.hpp"
#include "qtwin/relmodel.hpp"
#include "qtwin/rng.hpp"

using namespace qtwin;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ReliabilityModel load_bundled(const std::string& name) {
  return parse_model(read_file(std::string(QTWIN_MODELS_DIR) + "/" + name));
}

ReliabilityModel two_series(double p1 = 0.9, double p2 = 0.9) {
  StructureNode s;
  s.kind = StructureNode::Kind::Series;
  StructureNode a, b;
  a.leaf_id = "a";
  b.leaf_id = "b";
  s.children = {a, b};
  return ReliabilityModel({{"a", p1, {}}, {"b", p2, {}}}, s);
}

}  // namespace

TEST_CASE("series evaluation") {
  const auto model = two_series();
  CHECK(model.evaluate(ComponentState::from_mask(0b11, 2)));
  CHECK_FALSE(model.evaluate(ComponentState::from_mask(0b01, 2)));
  CHECK_FALSE(model.evaluate(ComponentState::from_mask(0b10, 2)));
  CHECK_FALSE(model.evaluate(ComponentState::from_mask(0b00, 2)));
}

TEST_CASE("bridge path {1,3,5} satisfies") {
  const auto model = load_bundled("bridge-5.json");
  // components e1..e5 on bits 0..4; state 10101 = e1,e3,e5 up
  CHECK(model.evaluate(ComponentState::from_mask(0b10101, 5)));
  CHECK_FALSE(model.evaluate(ComponentState::from_mask(0b00101, 5)));
}

TEST_CASE("state probability is the product law") {
  const auto model = two_series();
  CHECK(model.state_probability(ComponentState::from_mask(0b11, 2)) == doctest::Approx(0.81));
  CHECK(model.state_probability(ComponentState::from_mask(0b01, 2)) == doctest::Approx(0.09));
}

TEST_CASE("state probabilities sum to one over all states") {
  for (const char* name :
       {"series-2.json", "parallel-2.json", "bridge-5.json", "gens-2of3.json",
        "gens-capacity-3.json", "feeder-10.json"}) {
    CAPTURE(name);
    const auto model = load_bundled(name);
    double total = 0.0;
    for (std::uint64_t x = 0; x < (1ull << model.component_count()); ++x) {
      total += model.state_probability_mask(x);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("evaluation is deterministic") {
  const auto model = load_bundled("bridge-5.json");
  for (std::uint64_t x = 0; x < 32; ++x) {
    CHECK(model.evaluate_mask(x) == model.evaluate_mask(x));
  }
}

TEST_CASE("series equals and, parallel equals or, exhaustively") {
  Rng rng(20240901);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(6));
    std::vector<ComponentSpec> comps;
    std::vector<StructureNode> leaves;
    for (std::uint32_t i = 0; i < n; ++i) {
      comps.push_back({"c" + std::to_string(i), 0.5, {}});
      StructureNode leaf;
      leaf.leaf_id = comps.back().id;
      leaves.push_back(leaf);
    }
    StructureNode series, conj, parallel, disj;
    series.kind = StructureNode::Kind::Series;
    conj.kind = StructureNode::Kind::And;
    parallel.kind = StructureNode::Kind::Parallel;
    disj.kind = StructureNode::Kind::Or;
    series.children = conj.children = parallel.children = disj.children = leaves;

    const ReliabilityModel ms(comps, series), ma(comps, conj);
    const ReliabilityModel mp(comps, parallel), mo(comps, disj);
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
      CHECK(ms.evaluate_mask(x) == ma.evaluate_mask(x));
      CHECK(mp.evaluate_mask(x) == mo.evaluate_mask(x));
    }
  }
}

TEST_CASE("kofn counts true children") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(7));
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(n));
    std::vector<ComponentSpec> comps;
    StructureNode node;
    node.kind = StructureNode::Kind::KOfN;
    node.k = k;
    for (std::uint32_t i = 0; i < n; ++i) {
      comps.push_back({"c" + std::to_string(i), 0.5, {}});
      StructureNode leaf;
      leaf.leaf_id = comps.back().id;
      node.children.push_back(leaf);
    }
    const ReliabilityModel model(comps, node);
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
      CHECK(model.evaluate_mask(x) == (std::popcount(x) >= k));
    }
  }
}

TEST_CASE("capacity threshold sums up capacities of up components") {
  const auto model = load_bundled("gens-capacity-3.json");
  const double caps[] = {50, 100, 150};
  for (std::uint64_t x = 0; x < 8; ++x) {
    double avail = 0.0;
    for (int i = 0; i < 3; ++i) {
      if ((x >> i) & 1) avail += caps[i];
    }
    CHECK(model.evaluate_mask(x) == (avail >= 150.0));
  }
}

TEST_CASE("not is allowed and negates") {
  StructureNode leaf;
  leaf.leaf_id = "a";
  StructureNode node;
  node.kind = StructureNode::Kind::Not;
  node.children = {leaf};
  const ReliabilityModel model({{"a", 0.3, {}}}, node);
  CHECK(model.evaluate_mask(0));
  CHECK_FALSE(model.evaluate_mask(1));
}

TEST_CASE("parse: bundled 2-of-3 file") {
  const auto model = load_bundled("gens-2of3.json");
  CHECK(model.component_count() == 3);
  CHECK(model.structure().kind == StructureNode::Kind::KOfN);
  CHECK(model.structure().k == 2);
}

TEST_CASE("parse: availability out of range names the component") {
  const std::string text = R"({"components":[{"id":"gX","availability":1.2}],"structure":"gX"})";
  CHECK_THROWS_WITH_AS(parse_model(text),
                       doctest::Contains("gX"), ValidationError);
}

TEST_CASE("parse: undeclared id in structure names it") {
  const std::string text =
      R"({"components":[{"id":"g1","availability":0.9}],"structure":"g9"})";
  CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("g9"), ValidationError);
}

TEST_CASE("parse: kofn k out of range") {
  const std::string text =
      R"({"components":[{"id":"a","availability":0.9},{"id":"b","availability":0.9}],
          "structure":{"type":"kofn","k":3,"of":["a","b"]}})";
  CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("k=3"), ValidationError);
}

TEST_CASE("parse: capacity node with capacity-less component") {
  const std::string text =
      R"({"components":[{"id":"a","availability":0.9,"capacity":10},{"id":"b","availability":0.9}],
          "structure":{"type":"capacity","demand":5}})";
  CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("\"b\""), ValidationError);
}

TEST_CASE("parse: duplicate ids rejected") {
  const std::string text =
      R"({"components":[{"id":"a","availability":0.9},{"id":"a","availability":0.8}],
          "structure":"a"})";
  CHECK_THROWS_AS(parse_model(text), ValidationError);
}

TEST_CASE("parse: malformed json rejected") {
  CHECK_THROWS_AS(parse_model("{nope"), ValidationError);
}

TEST_CASE("model round-trips through the serializer") {
  for (const char* name :
       {"series-2.json", "parallel-2.json", "bridge-5.json", "gens-2of3.json",
        "gens-capacity-3.json", "feeder-10.json"}) {
    CAPTURE(name);
    const std::string original = read_file(std::string(QTWIN_MODELS_DIR) + "/" + name);
    const auto model = parse_model(original);
    const std::string serialized = serialize_model(model);
    const auto reparsed = parse_model(serialized);
    CHECK(serialize_model(reparsed) == serialized);
    CHECK(reparsed.component_count() == model.component_count());
    for (std::uint64_t x = 0; x < (1ull << model.component_count()); ++x) {
      REQUIRE(reparsed.evaluate_mask(x) == model.evaluate_mask(x));
    }
  }
}

TEST_CASE("state length must match the model") {
  const auto model = two_series();
  CHECK_THROWS_AS(model.evaluate(ComponentState::from_mask(0, 3)), ValidationError);
}
