#pragma once

#include <random>
#include <vector>

#include "qwalk/qwalk.hpp"

namespace testutil {

using namespace qwalk;

inline GateOp random_gate(std::mt19937& gen, int nq) {
  std::uniform_int_distribution<int> kind_pick(0, 5);
  std::uniform_int_distribution<int> qubit_pick(0, nq - 1);
  std::uniform_real_distribution<double> angle(-3.5, 3.5);
  GateOp g;
  switch (kind_pick(gen)) {
    case 0: g = GateOp::x(qubit_pick(gen)); break;
    case 1: g = GateOp::h(qubit_pick(gen)); break;
    case 2: g = GateOp::ry(angle(gen), qubit_pick(gen)); break;
    case 3: g = GateOp::rz(angle(gen), qubit_pick(gen)); break;
    case 4: g = GateOp::phase(angle(gen), qubit_pick(gen)); break;
    default: g = GateOp::u3(angle(gen), angle(gen), angle(gen), qubit_pick(gen)); break;
  }
  // sprinkle 0..2 controls on distinct qubits, either polarity
  std::uniform_int_distribution<int> n_controls(0, 2);
  std::bernoulli_distribution coin(0.5);
  int wanted = n_controls(gen);
  for (int q = 0; q < nq && wanted > 0; ++q) {
    if (q == g.target) continue;
    if (coin(gen)) {
      g.controlled_by(q, coin(gen));
      --wanted;
    }
  }
  return g;
}

inline std::vector<GateOp> random_circuit(std::mt19937& gen, int nq, int ngates) {
  std::vector<GateOp> gates;
  gates.reserve(ngates);
  for (int i = 0; i < ngates; ++i) gates.push_back(random_gate(gen, nq));
  return gates;
}

// Independent ^_m(X) oracle: the permutation that flips `target` exactly on
// basis states where every control bit is set.
inline CMat mcx_permutation(const std::vector<int>& controls, int target, int nq) {
  const int dim = 1 << nq;
  CMat u(dim);
  for (int b = 0; b < dim; ++b) {
    bool fire = true;
    for (int c : controls) fire = fire && ((b >> c) & 1);
    const int image = fire ? (b ^ (1 << target)) : b;
    u.at(image, b) = 1.0;
  }
  return u;
}

inline StateVector basis_state(const RegisterLayout& layout, int index) {
  StateVector st;
  st.layout = layout;
  st.amplitudes.assign(1ull << layout.total_qubits(), cplx{});
  st.amplitudes[static_cast<std::size_t>(index)] = 1.0;
  return st;
}

}  // namespace testutil
