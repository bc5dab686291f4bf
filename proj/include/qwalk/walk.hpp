#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/decompose.hpp"

namespace qwalk {

/// Walk configuration on an N = 2^n cycle. The initial coin defaults to |0>,
/// which is the orientation that puts the three-step peak on |N-1>.
struct WalkSpec {
  int n = 1;
  int steps = 0;
  Flavor flavor = Flavor::Inverters;
  int initial_position = 0;
  int initial_coin = 0;
};

inline RegisterLayout walk_layout(int n, Flavor flavor) {
  if (n < 1) throw std::invalid_argument("walk needs at least one position qubit");
  const int ancillas = (flavor == Flavor::Inverters && n >= 2) ? n - 1 : 0;
  return RegisterLayout{n, ancillas};
}

namespace detail {

// Ripple cascade for +1 on the position register, every gate also controlled
// by the coin: flip q_k iff coin and q_0..q_{k-1} are all set, k = n-1 .. 0.
inline Circuit abstract_increment(int n, Flavor flavor) {
  Circuit c;
  c.layout = walk_layout(n, flavor);
  const int coin = c.layout.coin_qubit();
  for (int k = n - 1; k >= 0; --k) {
    GateOp g = GateOp::x(k).controlled_by(coin);
    for (int q = 0; q < k; ++q) g.controlled_by(q);
    if (g.controls.size() == 2) g.kind = GateKind::Toffoli;
    c.append(std::move(g));
  }
  return c;
}

}  // namespace detail

/// Coin-conditioned +1 (mod N): |x>|1> -> |x+1>|1>, |x>|0> -> |x>|0>.
inline Circuit build_increment(int n, Flavor flavor) {
  return expand_circuit(detail::abstract_increment(n, flavor), flavor);
}

/// Coin-conditioned -1 (mod N): |x>|0> -> |x-1>|0>, |x>|1> -> |x>|1>.
/// Same cascade with every control negated; realized by inverting the control
/// qubits (coin and q_0..q_{n-2}) once at the start and uncomputing at the end.
inline Circuit build_decrement(int n, Flavor flavor) {
  Circuit abstract;
  abstract.layout = walk_layout(n, flavor);
  std::vector<int> inverted{abstract.layout.coin_qubit()};
  for (int q = 0; q + 1 < n; ++q) inverted.push_back(q);
  for (int q : inverted) abstract.append(GateOp::x(q));
  abstract.append(detail::abstract_increment(n, flavor));
  for (int q : inverted) abstract.append(GateOp::x(q));
  return expand_circuit(abstract, flavor);
}

/// One walk step: coin flip, then the conditional shift
/// (increment and decrement act on disjoint coin sectors, so their order is
/// immaterial; increment comes first).
inline Circuit build_step(int n, Flavor flavor) {
  Circuit c;
  c.layout = walk_layout(n, flavor);
  c.append(GateOp::h(c.layout.coin_qubit()));
  c.append(build_increment(n, flavor));
  c.append(build_decrement(n, flavor));
  return c;
}

/// t concatenated steps. State preparation is not included; the simulator
/// initializes the registers.
inline Circuit build_walk(const WalkSpec& spec) {
  if (spec.steps < 0) throw std::invalid_argument("steps must be non-negative");
  Circuit step = build_step(spec.n, spec.flavor);
  Circuit walk;
  walk.layout = step.layout;
  for (int t = 0; t < spec.steps; ++t) walk.append(step);
  return walk;
}

inline constexpr int kMaxReferenceQubits = 10;

/// U = S * (I (x) H) built directly from the cyclic shift permutations on the
/// position (x) coin space: coin |0> shifts left, coin |1> shifts right.
/// Independent oracle for all step-circuit equivalence checks.
inline CMat reference_step_unitary(int n) {
  if (n < 1) throw std::invalid_argument("reference needs n >= 1");
  if (n > kMaxReferenceQubits)
    throw CapacityError("reference_step_unitary supports n <= " +
                        std::to_string(kMaxReferenceQubits));
  const int N = 1 << n;
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  CMat u(2 * N);
  const auto idx = [N](int x, int c) { return c * N + x; };
  for (int x = 0; x < N; ++x) {
    for (int c = 0; c < 2; ++c) {
      // H sends coin c to (|0> + (-1)^c |1>)/sqrt(2); S- follows coin 0, S+ coin 1
      u.at(idx((x - 1 + N) % N, 0), idx(x, c)) = inv_sqrt2;
      u.at(idx((x + 1) % N, 1), idx(x, c)) = c == 0 ? inv_sqrt2 : -inv_sqrt2;
    }
  }
  return u;
}

/// Submatrix of rows/columns whose ancilla bits are all zero; the block a
/// correctly uncomputed fragment acts on.
inline CMat ancilla_zero_block(const CMat& u, const RegisterLayout& layout) {
  const int keep_bits = layout.n_position + 1;
  const int dim = 1 << keep_bits;
  if (u.dim != 1 << layout.total_qubits())
    throw std::invalid_argument("unitary does not match layout");
  CMat out(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out.at(r, c) = u.at(r, c);
  return out;
}

}  // namespace qwalk
