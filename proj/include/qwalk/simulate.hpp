#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Synthetic NISQ stand-in: after every gate each touched qubit suffers a
/// uniformly chosen Pauli with probability p_gate; each measured position bit
/// flips with probability p_meas. Not calibrated to any hardware.
struct NoiseParams {
  double p_gate = 0.0;
  double p_meas = 0.0;
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  Distribution frequency;
  long long shots = 0;
  std::map<int, double> ci_halfwidth;  // 95% normal-approximation bands
};

inline constexpr int kMaxDenseQubits = 24;

namespace rng {

// SplitMix64; streams are derived per (seed, batch, shot, tag) so trajectories
// are order-independent and safe to parallelize.
inline std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct Stream {
  std::uint64_t state = 0;
  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ull;
    return mix(state);
  }
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

inline constexpr std::uint64_t kMeasureTag = 0x6d656173756d6531ull;
inline constexpr std::uint64_t kNoiseTag = 0x6e6f697365747261ull;

inline Stream derive(std::uint64_t seed, std::uint64_t batch, std::uint64_t shot,
                     std::uint64_t tag) {
  std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ull);
  s = mix(s ^ (batch + 0xD1B54A32D192ED03ull));
  s = mix(s ^ (shot + 0x8CB92BA72F3D8DD7ull));
  s = mix(s ^ tag);
  return Stream{s};
}

}  // namespace rng

namespace detail {

inline void check_capacity(const RegisterLayout& layout) {
  if (layout.total_qubits() > kMaxDenseQubits)
    throw CapacityError("dense simulation supports at most " +
                        std::to_string(kMaxDenseQubits) + " qubits, layout needs " +
                        std::to_string(layout.total_qubits()));
}

inline StateVector initial_state(const WalkSpec& spec) {
  const RegisterLayout layout = walk_layout(spec.n, spec.flavor);
  check_capacity(layout);
  StateVector st = init_state(layout, spec.initial_position);
  if (spec.initial_coin == 1)
    apply_gate(st, GateOp::x(layout.coin_qubit()));
  else if (spec.initial_coin != 0)
    throw std::invalid_argument("initial coin must be 0 or 1");
  return st;
}

inline void inject_pauli(StateVector& st, int qubit, std::uint64_t which) {
  switch (which % 3) {
    case 0:
      apply_gate(st, GateOp::x(qubit));
      break;
    case 1: {  // Y
      GateOp y = GateOp::u3(std::numbers::pi, std::numbers::pi / 2.0, std::numbers::pi / 2.0, qubit);
      apply_gate(st, y);
      break;
    }
    default:
      apply_gate(st, GateOp::rz(std::numbers::pi, qubit));  // Z up to global phase
      break;
  }
}

inline std::vector<double> position_marginal(const StateVector& st) {
  const std::uint64_t mask = (1ull << st.layout.n_position) - 1;
  std::vector<double> p(1ull << st.layout.n_position, 0.0);
  for (std::uint64_t i = 0; i < st.amplitudes.size(); ++i)
    p[i & mask] += std::norm(st.amplitudes[i]);
  return p;
}

inline int sample_index(const std::vector<double>& marginal, double u) {
  double acc = 0.0;
  for (std::size_t x = 0; x < marginal.size(); ++x) {
    acc += marginal[x];
    if (u < acc) return static_cast<int>(x);
  }
  return static_cast<int>(marginal.size()) - 1;
}

inline int readout_flips(int outcome, int n_bits, double p_meas, rng::Stream& ms) {
  if (p_meas <= 0.0) return outcome;
  for (int b = 0; b < n_bits; ++b)
    if (ms.next_double() < p_meas) outcome ^= 1 << b;
  return outcome;
}

}  // namespace detail

/// Deterministic exact position distribution of the walk circuit.
inline Distribution run_exact(const WalkSpec& spec) {
  StateVector st = detail::initial_state(spec);
  apply_circuit(st, build_walk(spec));
  return measure_distribution(st);
}

/// Monte Carlo shots. Noiseless trajectories share one exact evolution; a
/// noisy trajectory re-evolves the state with its own Pauli injections.
/// Identical (spec, shots, noise) always produce identical results.
inline ExperimentResult batch_experiment(const WalkSpec& spec, int batches,
                                         long long shots_per_batch,
                                         const std::optional<NoiseParams>& noise = {}) {
  if (batches < 1) throw std::invalid_argument("batches must be >= 1");
  if (shots_per_batch < 1) throw std::invalid_argument("shots must be >= 1");
  const NoiseParams np = noise.value_or(NoiseParams{});
  if (np.p_gate < 0.0 || np.p_gate > 1.0 || np.p_meas < 0.0 || np.p_meas > 1.0)
    throw std::invalid_argument("noise probabilities must lie in [0, 1]");

  const Circuit walk = build_walk(spec);
  const int n_bits = spec.n;
  std::vector<long long> counts(1ull << n_bits, 0);

  std::vector<double> ideal_marginal;
  if (np.p_gate == 0.0) {
    StateVector st = detail::initial_state(spec);
    apply_circuit(st, walk);
    ideal_marginal = detail::position_marginal(st);
  }

  for (int j = 0; j < batches; ++j) {
    for (long long i = 0; i < shots_per_batch; ++i) {
      rng::Stream ms = rng::derive(np.seed, static_cast<std::uint64_t>(j),
                                   static_cast<std::uint64_t>(i), rng::kMeasureTag);
      int outcome;
      if (np.p_gate == 0.0) {
        outcome = detail::sample_index(ideal_marginal, ms.next_double());
      } else {
        rng::Stream ns = rng::derive(np.seed, static_cast<std::uint64_t>(j),
                                     static_cast<std::uint64_t>(i), rng::kNoiseTag);
        StateVector st = detail::initial_state(spec);
        for (const auto& g : walk.gates) {
          apply_gate(st, g);
          if (ns.next_double() < np.p_gate) detail::inject_pauli(st, g.target, ns.next_u64());
          for (const auto& c : g.controls)
            if (ns.next_double() < np.p_gate) detail::inject_pauli(st, c.qubit, ns.next_u64());
        }
        outcome = detail::sample_index(detail::position_marginal(st), ms.next_double());
      }
      outcome = detail::readout_flips(outcome, n_bits, np.p_meas, ms);
      ++counts[static_cast<std::size_t>(outcome)];
    }
  }

  const long long total = static_cast<long long>(batches) * shots_per_batch;
  ExperimentResult res;
  res.shots = total;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    if (counts[x] == 0) continue;
    const double p = static_cast<double>(counts[x]) / static_cast<double>(total);
    res.frequency[static_cast<int>(x)] = p;
    res.ci_halfwidth[static_cast<int>(x)] =
        1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(total));
  }
  return res;
}

inline ExperimentResult run_shots(const WalkSpec& spec, long long shots,
                                  const std::optional<NoiseParams>& noise = {}) {
  return batch_experiment(spec, 1, shots, noise);
}

}  // namespace qwalk
