#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/simulate.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Cycle label unwrapped into (-N/2, N/2]; the convention that makes variance
/// on a cycle comparable to the line-walk law before the wavefront wraps.
inline int signed_displacement(int position, int N) {
  if (position < 0 || position >= N) throw std::out_of_range("position outside cycle");
  return position <= N / 2 ? position : position - N;
}

inline double variance(const Distribution& dist, int N) {
  double total = 0.0, mean = 0.0, second = 0.0;
  for (const auto& [x, p] : dist) {
    const double d = signed_displacement(x, N);
    total += p;
    mean += p * d;
    second += p * d * d;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("distribution does not sum to 1");
  return second - mean * mean;
}

struct ModularityReport {
  bool ok = false;
  bool parity_ok = false;
  bool support_ok = false;
  std::vector<int> violating;
};

/// After t steps from start, every occupied state must have parity
/// (start + t) mod 2 and at most N/2 states may be occupied.
inline ModularityReport check_modularity(const Distribution& dist, int t, int start_position,
                                         int N, double tol) {
  ModularityReport rep;
  const int want_parity = (start_position + t) & 1;
  int support = 0;
  rep.parity_ok = true;
  for (const auto& [x, p] : dist) {
    if (p <= tol) continue;
    ++support;
    if ((x & 1) != want_parity) {
      rep.parity_ok = false;
      rep.violating.push_back(x);
    }
  }
  rep.support_ok = support <= N / 2;
  rep.ok = rep.parity_ok && rep.support_ok;
  return rep;
}

inline double total_variation(const Distribution& d1, const Distribution& d2) {
  double sum = 0.0;
  auto it1 = d1.begin();
  auto it2 = d2.begin();
  while (it1 != d1.end() || it2 != d2.end()) {
    if (it2 == d2.end() || (it1 != d1.end() && it1->first < it2->first)) {
      sum += std::abs(it1->second);
      ++it1;
    } else if (it1 == d1.end() || it2->first < it1->first) {
      sum += std::abs(it2->second);
      ++it2;
    } else {
      sum += std::abs(it1->second - it2->second);
      ++it1;
      ++it2;
    }
  }
  return 0.5 * sum;
}

/// Asymptotic variance coefficient of the coin-|0> Hadamard walk.
inline constexpr double kVarianceLawCoefficient = 0.20710678118654752440;  // (sqrt(2)-1)/2

struct VariancePoint {
  int t = 0;
  double simulated = 0.0;
  double theoretical = 0.0;
};

using VarianceSeries = std::vector<VariancePoint>;

/// Exact sigma^2(t) for t = 0..t_max from |0>, next to the quadratic law.
/// Restricted to the pre-wrap regime t_max < N/2.
inline VarianceSeries variance_sweep(int n, int t_max, Flavor flavor) {
  const int N = 1 << n;
  if (t_max < 0) throw std::invalid_argument("t_max must be non-negative");
  if (t_max >= N / 2)
    throw std::invalid_argument("t_max must stay below N/2; the line-walk law cannot hold "
                                "once the wavefront wraps");
  detail::check_capacity(walk_layout(n, flavor));
  const Circuit step = build_step(n, flavor);
  StateVector st = init_state(step.layout, 0);
  VarianceSeries series;
  series.push_back({0, variance(measure_distribution(st), N), 0.0});
  for (int t = 1; t <= t_max; ++t) {
    apply_circuit(st, step);
    series.push_back({t, variance(measure_distribution(st), N),
                      kVarianceLawCoefficient * t * t});
  }
  return series;
}

}  // namespace qwalk
