#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace qwalk;
using testutil::basis_state;
using testutil::random_circuit;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

TEST_CASE("register layout arithmetic", "[core]") {
  const RegisterLayout rot{3, 0};
  REQUIRE(rot.total_qubits() == 4);
  REQUIRE(rot.coin_qubit() == 3);
  const RegisterLayout inv{3, 2};
  REQUIRE(inv.total_qubits() == 6);
  REQUIRE(inv.ancilla_qubit(0) == 4);
  REQUIRE(inv.ancilla_qubit(1) == 5);
}

TEST_CASE("init_state places the walker", "[core]") {
  SECTION("position 0") {
    const StateVector st = init_state(RegisterLayout{3, 0}, 0);
    REQUIRE(std::abs(st.amplitudes[0] - cplx{1.0}) < 1e-15);
  }
  SECTION("position 5") {
    const StateVector st = init_state(RegisterLayout{3, 0}, 5);
    REQUIRE(std::abs(st.amplitudes[5] - cplx{1.0}) < 1e-15);
    REQUIRE(st.norm() == Approx(1.0));
  }
  SECTION("position bits sit below coin and ancilla") {
    const StateVector st = init_state(RegisterLayout{2, 1}, 3);
    REQUIRE(std::abs(st.amplitudes[3] - cplx{1.0}) < 1e-15);  // coin 0, ancilla 0
  }
  SECTION("out of range") {
    REQUIRE_THROWS_AS(init_state(RegisterLayout{3, 0}, 8), std::out_of_range);
    REQUIRE_THROWS_AS(init_state(RegisterLayout{3, 0}, -1), std::out_of_range);
  }
}

TEST_CASE("apply_gate basics", "[core]") {
  SECTION("hadamard on |0>") {
    StateVector st = basis_state(RegisterLayout{0, 0}, 0);
    apply_gate(st, GateOp::h(0));
    REQUIRE(std::abs(st.amplitudes[0] - cplx{kInvSqrt2}) < 1e-15);
    REQUIRE(std::abs(st.amplitudes[1] - cplx{kInvSqrt2}) < 1e-15);
  }
  SECTION("rz(pi/2) phases |0> by e^{i pi/4}") {
    StateVector st = basis_state(RegisterLayout{0, 0}, 0);
    apply_gate(st, GateOp::rz(kPi / 2, 0));
    REQUIRE(std::abs(st.amplitudes[0] - std::polar(1.0, kPi / 4)) < 1e-15);
  }
  SECTION("cnot truth table: control q1, target q0") {
    StateVector st = basis_state(RegisterLayout{1, 0}, 2);  // |10>
    apply_gate(st, GateOp::cx(1, 0));
    REQUIRE(std::abs(st.amplitudes[3] - cplx{1.0}) < 1e-15);  // |11>
  }
  SECTION("negative control fires on |0>") {
    StateVector st = basis_state(RegisterLayout{1, 0}, 0);  // |00>
    apply_gate(st, GateOp{GateKind::X, {}, 0, {{1, false}}});
    REQUIRE(std::abs(st.amplitudes[1] - cplx{1.0}) < 1e-15);
  }
  SECTION("bad indices are rejected") {
    StateVector st = basis_state(RegisterLayout{1, 0}, 0);
    REQUIRE_THROWS_AS(apply_gate(st, GateOp::x(5)), std::out_of_range);
    REQUIRE_THROWS_AS(apply_gate(st, GateOp::cx(0, 0)), std::invalid_argument);
  }
}

TEST_CASE("circuit_unitary basics", "[core]") {
  SECTION("empty circuit is the identity") {
    Circuit c;
    c.layout = RegisterLayout{1, 0};
    REQUIRE(approx_equal(circuit_unitary(c), CMat::identity(4), 0.0));
  }
  SECTION("single x") {
    Circuit c;
    c.layout = RegisterLayout{0, 0};
    c.append(GateOp::x(0));
    CMat expect(2);
    expect.at(0, 1) = expect.at(1, 0) = 1.0;
    REQUIRE(approx_equal(circuit_unitary(c), expect, 0.0));
  }
  SECTION("toffoli circuit gives the expected permutation") {
    Circuit c;
    c.layout = RegisterLayout{2, 0};
    c.append(GateOp::toffoli(2, 1, 0));
    // permutation built directly: flip q0 iff q1 and q2
    CMat expect(8);
    for (int b = 0; b < 8; ++b) {
      const int image = ((b & 6) == 6) ? (b ^ 1) : b;
      expect.at(image, b) = 1.0;
    }
    REQUIRE(approx_equal(circuit_unitary(c), expect, 0.0));
  }
  SECTION("capacity guard") {
    Circuit c;
    c.layout = RegisterLayout{13, 0};
    REQUIRE_THROWS_AS(circuit_unitary(c), CapacityError);
  }
}

TEST_CASE("measure_distribution marginalizes coin and ancilla", "[core]") {
  SECTION("point mass") {
    const StateVector st = init_state(RegisterLayout{3, 0}, 0);
    const Distribution d = measure_distribution(st);
    REQUIRE(d.size() == 1);
    REQUIRE(d.at(0) == Approx(1.0));
  }
  SECTION("two-branch superposition") {
    StateVector st;
    st.layout = RegisterLayout{3, 0};
    st.amplitudes.assign(16, cplx{});
    st.amplitudes[1] = kInvSqrt2;       // pos 1, coin 0
    st.amplitudes[8 + 7] = kInvSqrt2;   // pos 7, coin 1
    const Distribution d = measure_distribution(st);
    REQUIRE(d.size() == 2);
    REQUIRE(d.at(1) == Approx(0.5));
    REQUIRE(d.at(7) == Approx(0.5));
  }
}

TEST_CASE("random circuits preserve the norm", "[core][property]") {
  std::mt19937 gen(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int nq = 2 + static_cast<int>(gen() % 5);  // up to 6
    StateVector st = basis_state(RegisterLayout{nq - 1, 0}, static_cast<int>(gen() % 2));
    for (const auto& g : random_circuit(gen, nq, 50)) apply_gate(st, g);
    REQUIRE(std::abs(st.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("circuit unitaries are unitary", "[core][property]") {
  std::mt19937 gen(202);
  for (int trial = 0; trial < 12; ++trial) {
    const int nq = 2 + static_cast<int>(gen() % 3);
    const auto gates = random_circuit(gen, nq, 25);
    const CMat u = unitary_of(gates, nq);
    REQUIRE(approx_equal(u * dagger(u), CMat::identity(u.dim), 1e-8));
  }
}

TEST_CASE("gate-by-gate evolution agrees with the circuit unitary", "[core][property]") {
  std::mt19937 gen(303);
  for (int trial = 0; trial < 12; ++trial) {
    const int nq = 2 + static_cast<int>(gen() % 3);
    const auto gates = random_circuit(gen, nq, 20);
    const CMat u = unitary_of(gates, nq);
    const int basis = static_cast<int>(gen() % (1u << nq));
    StateVector st = basis_state(RegisterLayout{nq - 1, 0}, 0);
    st.amplitudes.assign(1ull << nq, cplx{});
    st.amplitudes[static_cast<std::size_t>(basis)] = 1.0;
    for (const auto& g : gates) apply_gate(st, g);
    for (int r = 0; r < u.dim; ++r)
      REQUIRE(std::abs(st.amplitudes[static_cast<std::size_t>(r)] - u.at(r, basis)) < 1e-9);
  }
}

TEST_CASE("negative control equals x-conjugated positive control", "[core][property]") {
  std::mt19937 gen(404);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int nq = 3;
    GateOp g = testutil::random_gate(gen, nq);
    g.controls.clear();
    const int control = g.target == 0 ? 1 : 0;
    GateOp negative = g;
    negative.controlled_by(control, false);
    GateOp positive = g;
    positive.controlled_by(control, true);
    std::vector<GateOp> conjugated{GateOp::x(control), positive, GateOp::x(control)};
    const CMat lhs = unitary_of(std::vector<GateOp>{negative}, nq);
    const CMat rhs = unitary_of(conjugated, nq);
    REQUIRE(approx_equal(lhs, rhs, 1e-10));
  }
}
