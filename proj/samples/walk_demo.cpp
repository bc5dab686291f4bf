// Minimal library tour: build both architectures for an 8-cycle walk, check
// them against the reference unitary, run three steps and print diagnostics.

#include <cstdio>

#include "qwalk/qwalk.hpp"

int main() {
  using namespace qwalk;
  const int n = 3;

  const CMat reference = reference_step_unitary(n);
  for (const Flavor flavor : {Flavor::Inverters, Flavor::Rotations}) {
    const Circuit step = build_step(n, flavor);
    const CMat block = ancilla_zero_block(circuit_unitary(step), step.layout);
    std::printf("%-10s %3zu gates on %d qubits, deviation from reference %.2e\n",
                flavor_name(flavor), step.gates.size(), step.qubit_count(),
                max_abs_diff(block, reference));
  }

  const WalkSpec spec{n, 3, Flavor::Rotations};
  std::printf("\nexact distribution after %d steps from |0>:\n", spec.steps);
  const Distribution dist = run_exact(spec);
  for (const auto& [state, p] : dist) std::printf("  |%d>  %.4f\n", state, p);
  std::printf("variance (signed displacement): %.4f\n", variance(dist, 1 << n));

  NoiseParams noise;
  noise.p_gate = 0.01;
  noise.seed = 42;
  const ExperimentResult noisy = run_shots(spec, 20000, noise);
  std::printf("TV distance of a noisy 2e4-shot run from ideal: %.4f\n",
              total_variation(noisy.frequency, dist));
  return 0;
}
