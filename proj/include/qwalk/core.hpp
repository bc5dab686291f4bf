#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/gates.hpp"
#include "qwalk/matrix.hpp"

namespace qwalk {

/// Thrown when a request exceeds what the dense backends can hold
/// (too many qubits, missing ancilla workspace, ...).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Flavor { Inverters, Rotations };

inline const char* flavor_name(Flavor f) {
  return f == Flavor::Inverters ? "inverters" : "rotations";
}

inline Flavor parse_flavor(const std::string& s) {
  if (s == "inverters") return Flavor::Inverters;
  if (s == "rotations") return Flavor::Rotations;
  throw std::invalid_argument("unknown flavor: " + s);
}

/// Qubit numbering convention used everywhere: qubit 0 is the least
/// significant bit of a basis-state index. The position register occupies
/// bits [0, n_position), the coin is bit n_position, ancillas sit above it.
struct RegisterLayout {
  int n_position = 1;
  int n_ancilla = 0;

  int coin_qubit() const { return n_position; }
  int ancilla_qubit(int k) const { return n_position + 1 + k; }
  int total_qubits() const { return n_position + 1 + n_ancilla; }
  int position_states() const { return 1 << n_position; }
};

struct ControlSpec {
  int qubit = 0;
  bool positive = true;
};

/// One circuit element: a named gate applied to `target`, conditioned on the
/// listed controls (negative polarity conditions on |0>).
struct GateOp {
  GateKind kind = GateKind::X;
  std::vector<double> params;
  int target = 0;
  std::vector<ControlSpec> controls;

  GateOp& controlled_by(int qubit, bool positive = true) {
    controls.push_back({qubit, positive});
    return *this;
  }

  static GateOp x(int t) { return {GateKind::X, {}, t, {}}; }
  static GateOp h(int t) { return {GateKind::H, {}, t, {}}; }
  static GateOp ry(double theta, int t) { return {GateKind::RY, {theta}, t, {}}; }
  static GateOp rz(double phi, int t) { return {GateKind::RZ, {phi}, t, {}}; }
  static GateOp phase(double delta, int t) { return {GateKind::Phase, {delta}, t, {}}; }
  static GateOp u3(double theta, double phi, double lambda, int t) {
    return {GateKind::U3, {theta, phi, lambda}, t, {}};
  }
  static GateOp cx(int control, int t) { return {GateKind::X, {}, t, {{control, true}}}; }
  static GateOp toffoli(int c0, int c1, int t) {
    return {GateKind::Toffoli, {}, t, {{c0, true}, {c1, true}}};
  }
};

inline void validate_gate(const GateOp& g, int n_qubits) {
  check_arity(g.kind, g.params.size());
  if (g.target < 0 || g.target >= n_qubits)
    throw std::out_of_range("gate target out of range: " + std::to_string(g.target));
  std::uint64_t seen = 0;
  for (const auto& c : g.controls) {
    if (c.qubit < 0 || c.qubit >= n_qubits)
      throw std::out_of_range("control qubit out of range: " + std::to_string(c.qubit));
    if (c.qubit == g.target) throw std::invalid_argument("control equals target");
    const std::uint64_t bit = 1ull << c.qubit;
    if (seen & bit) throw std::invalid_argument("duplicate control qubit");
    seen |= bit;
  }
  if (g.kind == GateKind::Toffoli) {
    if (g.controls.size() != 2 || !g.controls[0].positive || !g.controls[1].positive)
      throw std::invalid_argument("toffoli requires exactly two positive controls");
  }
}

/// Ordered gate list over a register layout. Gate order is execution order;
/// there is no implicit parallelism.
struct Circuit {
  RegisterLayout layout;
  std::vector<GateOp> gates;

  int qubit_count() const { return layout.total_qubits(); }

  void append(GateOp g) {
    validate_gate(g, qubit_count());
    gates.push_back(std::move(g));
  }
  void append(std::span<const GateOp> more) {
    for (const auto& g : more) append(g);
  }
  void append(const Circuit& other) { append(std::span<const GateOp>(other.gates)); }
};

/// Dense amplitude vector over (ancilla | coin | position) in index order,
/// position in the low bits.
struct StateVector {
  RegisterLayout layout;
  std::vector<cplx> amplitudes;

  double norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }
};

using Distribution = std::map<int, double>;

inline StateVector init_state(const RegisterLayout& layout, int position) {
  if (position < 0 || position >= layout.position_states())
    throw std::out_of_range("initial position out of range: " + std::to_string(position));
  StateVector st;
  st.layout = layout;
  st.amplitudes.assign(1ull << layout.total_qubits(), cplx{});
  st.amplitudes[static_cast<std::size_t>(position)] = 1.0;
  return st;
}

namespace detail {

struct ControlMask {
  std::uint64_t care = 0;
  std::uint64_t want = 0;
};

inline ControlMask control_mask(const GateOp& g) {
  ControlMask m;
  for (const auto& c : g.controls) {
    m.care |= 1ull << c.qubit;
    if (c.positive) m.want |= 1ull << c.qubit;
  }
  return m;
}

inline void apply_2x2(std::vector<cplx>& amps, const Mat2& u, int target, ControlMask cm) {
  const std::uint64_t dim = amps.size();
  const std::uint64_t tbit = 1ull << target;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tbit) continue;
    if ((i & cm.care) != cm.want) continue;
    const std::uint64_t j = i | tbit;
    const cplx a = amps[i], b = amps[j];
    amps[i] = u.m00 * a + u.m01 * b;
    amps[j] = u.m10 * a + u.m11 * b;
  }
}

inline void apply_diagonal_phase(std::vector<cplx>& amps, cplx factor, ControlMask cm) {
  const std::uint64_t dim = amps.size();
  for (std::uint64_t i = 0; i < dim; ++i)
    if ((i & cm.care) == cm.want) amps[i] *= factor;
}

}  // namespace detail

/// Left-multiplies the state by the controlled unitary of `g`.
inline void apply_gate(StateVector& st, const GateOp& g) {
  validate_gate(g, st.layout.total_qubits());
  const detail::ControlMask cm = detail::control_mask(g);
  if (g.kind == GateKind::Phase) {
    // e^{i delta} * I on the target: conditioned only on the controls.
    detail::apply_diagonal_phase(st.amplitudes, std::polar(1.0, g.params[0]), cm);
    return;
  }
  const Mat2 u = (g.kind == GateKind::Toffoli)
                     ? Mat2{0.0, 1.0, 1.0, 0.0}
                     : unitary2x2(g.kind, g.params);
  detail::apply_2x2(st.amplitudes, u, g.target, cm);
}

inline void apply_circuit(StateVector& st, const Circuit& circuit) {
  for (const auto& g : circuit.gates) apply_gate(st, g);
}

inline constexpr int kMaxUnitaryQubits = 12;

/// Dense unitary of a gate sequence, built column-by-column. Oracle for the
/// equivalence tests; guarded against memory blowup.
inline CMat unitary_of(std::span<const GateOp> gates, int n_qubits) {
  if (n_qubits > kMaxUnitaryQubits)
    throw CapacityError("unitary_of supports at most " + std::to_string(kMaxUnitaryQubits) +
                        " qubits, got " + std::to_string(n_qubits));
  const int dim = 1 << n_qubits;
  CMat u(dim);
  StateVector col;
  col.layout = RegisterLayout{n_qubits - 1, 0};
  for (int b = 0; b < dim; ++b) {
    col.amplitudes.assign(static_cast<std::size_t>(dim), cplx{});
    col.amplitudes[static_cast<std::size_t>(b)] = 1.0;
    for (const auto& g : gates) apply_gate(col, g);
    for (int r = 0; r < dim; ++r) u.at(r, b) = col.amplitudes[static_cast<std::size_t>(r)];
  }
  return u;
}

inline CMat circuit_unitary(const Circuit& circuit) {
  return unitary_of(circuit.gates, circuit.qubit_count());
}

/// Born-rule position distribution: coin and ancilla registers marginalized.
inline Distribution measure_distribution(const StateVector& st) {
  const int n_pos = st.layout.n_position;
  const std::uint64_t pos_mask = (1ull << n_pos) - 1;
  std::vector<double> acc(1ull << n_pos, 0.0);
  for (std::uint64_t i = 0; i < st.amplitudes.size(); ++i)
    acc[i & pos_mask] += std::norm(st.amplitudes[i]);
  Distribution dist;
  for (std::size_t x = 0; x < acc.size(); ++x)
    if (acc[x] > 1e-18) dist[static_cast<int>(x)] = acc[x];
  return dist;
}

}  // namespace qwalk
