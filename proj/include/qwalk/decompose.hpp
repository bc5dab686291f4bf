#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/gates.hpp"

namespace qwalk {

/// W = Phase(phase) * A * X * B * X * C with A*B*C = I. Factor lists are in
/// matrix-product order (leftmost factor applied last).
struct AbcDecomposition {
  double phase = 0.0;
  std::vector<GateMatrix> a, b, c;
};

inline CMat product_of(const std::vector<GateMatrix>& factors) {
  CMat out = CMat::identity(2);
  for (const auto& f : factors) out = out * f.matrix;
  return out;
}

/// The binding for W = X: A = Rz(pi/2) Ry(pi/2), B = Ry(-pi/2), C = Rz(-pi/2).
/// A*X*B*X*C alone evaluates to -i*X, so the phase is +pi/2 (e^{i pi/2} = i).
inline AbcDecomposition abc_for_x() {
  constexpr double half_pi = std::numbers::pi / 2.0;
  AbcDecomposition d;
  d.phase = half_pi;
  d.a = {matrix_of(GateKind::RZ, {half_pi}), matrix_of(GateKind::RY, {half_pi})};
  d.b = {matrix_of(GateKind::RY, {-half_pi})};
  d.c = {matrix_of(GateKind::RZ, {-half_pi})};
  return d;
}

/// A multi-controlled-X to realize. Ancillas are consumed by the chain
/// construction only; the rotation network ignores them.
struct McxRequest {
  std::vector<ControlSpec> controls;
  int target = 0;
  std::vector<int> ancillas;
};

namespace detail {

inline std::vector<int> negative_controls(const std::vector<ControlSpec>& controls) {
  std::vector<int> neg;
  for (const auto& c : controls)
    if (!c.positive) neg.push_back(c.qubit);
  return neg;
}

inline std::vector<int> control_qubits(const std::vector<ControlSpec>& controls) {
  std::vector<int> qs;
  qs.reserve(controls.size());
  for (const auto& c : controls) qs.push_back(c.qubit);
  return qs;
}

// AND-chain over the controls: c0&c1 -> anc0, c2&anc0 -> anc1, ... ; the last
// ancilla holds the full conjunction, drives the target, then the chain is
// uncomputed so every ancilla returns to |0>.
inline void emit_mcx_chain(std::vector<GateOp>& out, const std::vector<int>& controls, int target,
                           std::span<const int> ancillas) {
  const std::size_t m = controls.size();
  out.push_back(GateOp::toffoli(controls[0], controls[1], ancillas[0]));
  for (std::size_t k = 2; k < m; ++k)
    out.push_back(GateOp::toffoli(controls[k], ancillas[k - 2], ancillas[k - 1]));
  out.push_back(GateOp::cx(ancillas[m - 2], target));
  for (std::size_t k = m - 1; k >= 2; --k)
    out.push_back(GateOp::toffoli(controls[k], ancillas[k - 2], ancillas[k - 1]));
  out.push_back(GateOp::toffoli(controls[0], controls[1], ancillas[0]));
}

inline void emit_cphase(std::vector<GateOp>& out, double delta, const std::vector<int>& qubits,
                        int spare);

// One level of the rotation network for ^_m(X), all controls positive.
// Writing u = controls[0..m-2] and l = controls[m-1]:
//   ^_1(C) [l -> target], ^_{m-1}(X) [u -> target], ^_1(B), ^_{m-1}(X),
//   ^_1(A), then the conjunction phase e^{i pi/2} over all m controls.
// A/B/C factor lists execute right-to-left (C first).
inline void emit_mcx_rotations(std::vector<GateOp>& out, const std::vector<int>& controls,
                               int target) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const std::size_t m = controls.size();
  if (m == 1) {
    out.push_back(GateOp::cx(controls[0], target));
    return;
  }
  if (m == 2) {
    out.push_back(GateOp::toffoli(controls[0], controls[1], target));
    return;
  }
  const int last = controls[m - 1];
  const std::vector<int> rest(controls.begin(), controls.end() - 1);
  out.push_back(GateOp::rz(-half_pi, target).controlled_by(last));  // C
  emit_mcx_rotations(out, rest, target);
  out.push_back(GateOp::ry(-half_pi, target).controlled_by(last));  // B
  emit_mcx_rotations(out, rest, target);
  out.push_back(GateOp::ry(half_pi, target).controlled_by(last));   // A = Rz * Ry
  out.push_back(GateOp::rz(half_pi, target).controlled_by(last));
  emit_cphase(out, half_pi, controls, target);
}

// Diagonal phase e^{i delta} on the all-ones subspace of `qubits`, expanded by
// the same network applied to V = diag(1, e^{i delta}):
// A = Rz(-delta/2), B = Rz(delta/2), C = I, residual phase delta/2.
// Bottoms out at a singly-controlled Phase gate (the spare qubit hosts it).
inline void emit_cphase(std::vector<GateOp>& out, double delta, const std::vector<int>& qubits,
                        int spare) {
  const std::size_t k = qubits.size();
  if (k == 1) {
    out.push_back(GateOp::phase(delta, spare).controlled_by(qubits[0]));
    return;
  }
  const int z = qubits[k - 1];
  const std::vector<int> w(qubits.begin(), qubits.end() - 1);
  if (w.size() == 1) {
    out.push_back(GateOp::cx(w[0], z));
    out.push_back(GateOp::rz(delta / 2.0, z));
    out.push_back(GateOp::cx(w[0], z));
    out.push_back(GateOp::rz(-delta / 2.0, z));
  } else {
    const int last = w.back();
    const std::vector<int> rest(w.begin(), w.end() - 1);
    emit_mcx_rotations(out, rest, z);
    out.push_back(GateOp::rz(delta / 2.0, z).controlled_by(last));
    emit_mcx_rotations(out, rest, z);
    out.push_back(GateOp::rz(-delta / 2.0, z).controlled_by(last));
  }
  emit_cphase(out, delta / 2.0, w, spare);
}

// X-sandwich realizing negative polarity around an all-positive body.
template <typename EmitBody>
inline std::vector<GateOp> with_polarity(const std::vector<ControlSpec>& controls,
                                         EmitBody&& emit_body) {
  std::vector<GateOp> out;
  const std::vector<int> neg = negative_controls(controls);
  for (int q : neg) out.push_back(GateOp::x(q));
  emit_body(out, control_qubits(controls));
  for (int q : neg) out.push_back(GateOp::x(q));
  return out;
}

}  // namespace detail

/// ^_m(X) via the ancilla AND-chain: 2m-1 Toffoli-class gates for m >= 3,
/// passthrough for m <= 2. Ancillas are assumed |0> on entry and are
/// returned to |0>.
inline std::vector<GateOp> mcx_ancilla(const McxRequest& req) {
  const std::size_t m = req.controls.size();
  if (m == 0) return {GateOp::x(req.target)};
  return detail::with_polarity(req.controls, [&](std::vector<GateOp>& out,
                                                 const std::vector<int>& qs) {
    if (m == 1) {
      out.push_back(GateOp::cx(qs[0], req.target));
    } else if (m == 2) {
      out.push_back(GateOp::toffoli(qs[0], qs[1], req.target));
    } else {
      if (req.ancillas.size() < m - 1)
        throw CapacityError("mcx_ancilla: " + std::to_string(m) + " controls need " +
                            std::to_string(m - 1) + " ancillas, have " +
                            std::to_string(req.ancillas.size()));
      detail::emit_mcx_chain(out, qs, req.target, std::span<const int>(req.ancillas));
    }
  });
}

/// ^_m(X) as an ancilla-free network of singly-controlled rotations, CNOTs,
/// Toffolis and controlled phase gates; m <= 2 pass through unchanged.
inline std::vector<GateOp> mcx_rotations(const McxRequest& req) {
  const std::size_t m = req.controls.size();
  if (m == 0) return {GateOp::x(req.target)};
  return detail::with_polarity(req.controls,
                               [&](std::vector<GateOp>& out, const std::vector<int>& qs) {
                                 detail::emit_mcx_rotations(out, qs, req.target);
                               });
}

/// Replaces every abstract ^_m(X) (m >= 3) by the fragment of the chosen
/// flavor and converts any negative-polarity control into an X-sandwich.
/// The output contains positively controlled primitives only.
inline Circuit expand_circuit(const Circuit& circuit, Flavor flavor) {
  Circuit out;
  out.layout = circuit.layout;
  for (const auto& g : circuit.gates) {
    const std::size_t m = g.controls.size();
    const bool is_mcx = g.kind == GateKind::X || g.kind == GateKind::Toffoli;
    if (!is_mcx && m > 1)
      throw std::invalid_argument(std::string("expand_circuit: cannot expand multi-controlled ") +
                                  kind_name(g.kind));
    if (is_mcx && m >= 3) {
      McxRequest req{g.controls, g.target, {}};
      if (flavor == Flavor::Inverters) {
        if (circuit.layout.n_ancilla < static_cast<int>(m) - 1)
          throw CapacityError("expand_circuit: layout has " +
                              std::to_string(circuit.layout.n_ancilla) +
                              " ancillas, gate needs " + std::to_string(m - 1));
        for (std::size_t k = 0; k + 1 < m; ++k)
          req.ancillas.push_back(circuit.layout.ancilla_qubit(static_cast<int>(k)));
      }
      const std::vector<GateOp> fragment =
          flavor == Flavor::Inverters ? mcx_ancilla(req) : mcx_rotations(req);
      out.append(std::span<const GateOp>(fragment));
      continue;
    }
    const std::vector<int> neg = detail::negative_controls(g.controls);
    if (neg.empty()) {
      GateOp copy = g;
      if (copy.kind == GateKind::X && m == 2) copy.kind = GateKind::Toffoli;
      out.append(std::move(copy));
      continue;
    }
    for (int q : neg) out.append(GateOp::x(q));
    GateOp body = g;
    for (auto& c : body.controls) c.positive = true;
    if (body.kind == GateKind::X && m == 2) body.kind = GateKind::Toffoli;
    out.append(std::move(body));
    for (int q : neg) out.append(GateOp::x(q));
  }
  return out;
}

}  // namespace qwalk
