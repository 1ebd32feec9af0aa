#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtwin/circuit.hpp"
#include "qtwin/errors.hpp"
#include "qtwin/rng.hpp"
#include "qtwin/statevec.hpp"

using namespace qtwin;

namespace {

// Random circuit over every invertible gate kind except the predicate oracle.
Circuit random_circuit(Rng& rng, std::uint32_t n, std::size_t length) {
  Circuit circuit(n);
  auto pick = [&] { return static_cast<std::uint32_t>(rng.below(n)); };
  auto pick_other = [&](std::uint32_t avoid) {
    std::uint32_t q = pick();
    while (q == avoid) q = pick();
    return q;
  };
  for (std::size_t i = 0; i < length; ++i) {
    const double angle = (rng.uniform01() - 0.5) * 4.0 * 3.14159265358979;
    switch (rng.below(12)) {
      case 0: circuit.append(Gate::ry(pick(), angle)); break;
      case 1: circuit.append(Gate::x(pick())); break;
      case 2: circuit.append(Gate::y(pick())); break;
      case 3: circuit.append(Gate::z(pick())); break;
      case 4: circuit.append(Gate::h(pick())); break;
      case 5: circuit.append(Gate::phase(pick(), angle)); break;
      case 6: {
        const auto t = pick();
        circuit.append(Gate::cx(pick_other(t), t));
        break;
      }
      case 7: {
        if (n < 3) { circuit.append(Gate::x(pick())); break; }
        const auto t = pick();
        const auto c1 = pick_other(t);
        auto c2 = pick_other(t);
        while (c2 == c1) c2 = pick_other(t);
        circuit.append(Gate::ccx(c1, c2, t));
        break;
      }
      case 8: {
        const auto t = pick();
        std::vector<std::uint32_t> controls;
        for (std::uint32_t q = 0; q < n; ++q) {
          if (q != t && rng.bernoulli(0.5)) controls.push_back(q);
        }
        if (controls.empty()) controls.push_back(pick_other(t));
        circuit.append(Gate::mcx(controls, t));
        break;
      }
      case 9: {
        std::vector<std::uint32_t> qubits;
        for (std::uint32_t q = 0; q < n; ++q) {
          if (rng.bernoulli(0.5)) qubits.push_back(q);
        }
        if (qubits.empty()) qubits.push_back(pick());
        circuit.append(Gate::mcz(qubits));
        break;
      }
      case 10: {
        const auto a = pick();
        circuit.append(Gate::swap(a, pick_other(a)));
        break;
      }
      case 11: {
        const auto t = pick();
        circuit.append(Gate::cphase(pick_other(t), t, angle));
        break;
      }
    }
  }
  return circuit;
}

}  // namespace

TEST_CASE("append extends and preserves order") {
  Circuit c(2);
  c.append(Gate::x(0));
  CHECK(c.size() == 1);
  c.append(Gate::h(1));
  c.append(Gate::cx(0, 1));
  REQUIRE(c.size() == 3);
  CHECK(c.gates()[0].kind == GateKind::X);
  CHECK(c.gates()[1].kind == GateKind::H);
  CHECK(c.gates()[2].kind == GateKind::CX);
}

TEST_CASE("append rejects out-of-range indices") {
  Circuit c(3);
  CHECK_THROWS_AS(c.append(Gate::cx(0, 5)), ValidationError);
  CHECK_THROWS_AS(c.append(Gate::x(3)), ValidationError);
}

TEST_CASE("append rejects repeated indices within a gate") {
  Circuit c(3);
  CHECK_THROWS_AS(c.append(Gate::cx(1, 1)), ValidationError);
  CHECK_THROWS_AS(c.append(Gate::mcx({0, 1}, 1)), ValidationError);
}

TEST_CASE("compose with the empty circuit is the identity") {
  Rng rng(11);
  const Circuit c = random_circuit(rng, 3, 12);
  const Circuit empty(3);
  CHECK(compose(c, empty) == c);
  CHECK(compose(empty, c) == c);
}

TEST_CASE("compose concatenates in order") {
  Rng rng(12);
  const Circuit a = random_circuit(rng, 4, 7);
  const Circuit b = random_circuit(rng, 4, 5);
  const Circuit ab = compose(a, b);
  CHECK(ab.size() == a.size() + b.size());
  CHECK(ab.gates()[0] == a.gates()[0]);
  CHECK(ab.gates()[a.size()] == b.gates()[0]);
}

TEST_CASE("compose rejects mismatched qubit counts") {
  CHECK_THROWS_AS(compose(Circuit(2), Circuit(3)), ValidationError);
}

TEST_CASE("inverse negates rotations and reverses order") {
  Circuit c(2);
  c.append(Gate::ry(0, 1.3));
  Circuit inv = inverse(c);
  CHECK(inv.gates()[0].angle == -1.3);

  Circuit x(1);
  x.append(Gate::x(0));
  CHECK(inverse(x) == x);

  Circuit two(2);
  two.append(Gate::cx(0, 1));
  two.append(Gate::h(0));
  const Circuit itwo = inverse(two);
  CHECK(itwo.gates()[0].kind == GateKind::H);
  CHECK(itwo.gates()[1].kind == GateKind::CX);
}

TEST_CASE("inverse is an involution") {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const Circuit c = random_circuit(rng, 2 + static_cast<std::uint32_t>(rng.below(4)), 20);
    CHECK(inverse(inverse(c)) == c);
  }
}

TEST_CASE("run of compose(c, inverse(c)) restores any initial state") {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));  // up to 8
    const Circuit c = random_circuit(rng, n, 15);

    // random normalized initial state prepared by a random circuit
    const Circuit prep = random_circuit(rng, n, 10);
    const StateVector initial = run(prep);
    const StateVector final_state = run(compose(c, inverse(c)), initial);
    CHECK(fidelity(initial, final_state) >= 1.0 - 1e-12);
  }
}

TEST_CASE("gate_stats tallies per kind and is invariant under inverse") {
  Circuit c(2);
  c.append(Gate::x(0));
  c.append(Gate::x(1));
  c.append(Gate::cx(0, 1));
  const GateStats stats = gate_stats(c);
  CHECK(stats.by_kind.at("X") == 2);
  CHECK(stats.by_kind.at("CX") == 1);
  CHECK(stats.total == 3);

  const GateStats empty = gate_stats(Circuit(2));
  CHECK(empty.total == 0);
  CHECK(empty.by_kind.empty());

  Rng rng(15);
  const Circuit r = random_circuit(rng, 5, 40);
  const GateStats fwd = gate_stats(r);
  const GateStats bwd = gate_stats(inverse(r));
  CHECK(fwd.total == bwd.total);
  CHECK(fwd.by_kind == bwd.by_kind);
}

TEST_CASE("dump format is stable and headed by the qubit count") {
  Circuit c(3);
  c.append(Gate::ry(0, 1.5));
  c.append(Gate::mcx({0, 1}, 2));
  const std::string dump = dump_circuit(c);
  CHECK(dump == "qubits: 3\nRY q[0] (1.5)\nMCX q[0],q[1],q[2]\n");
  CHECK(dump_circuit(c) == dump);
}
