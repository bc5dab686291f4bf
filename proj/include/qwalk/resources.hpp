#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qwalk/core.hpp"

namespace qwalk {

struct TableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline int exact_log2(std::uint64_t N) {
  if (N < 2 || (N & (N - 1)) != 0)
    throw std::invalid_argument("state-space size must be a power of two >= 2, got " +
                                std::to_string(N));
  int n = 0;
  while ((1ull << n) < N) ++n;
  return n;
}

}  // namespace detail

/// Closed-form per-step gate count of the walk circuit. The sums are
/// evaluated literally; t-step totals are t times the per-step value.
inline std::uint64_t gate_count_formula(std::uint64_t N, Flavor flavor) {
  const int n = detail::exact_log2(N);
  const std::uint64_t base = 2ull * n + 5ull;
  if (N < 8) return base;
  if (flavor == Flavor::Inverters) {
    std::uint64_t expanded = 0;
    for (int nc = 3; nc <= n; ++nc) expanded += 2ull * nc - 1ull;
    return 2ull * expanded + base;
  }
  std::uint64_t sum = 0;
  for (int j = 3; j <= n; ++j) {
    sum += 1ull << (2 - j + n);
    std::uint64_t inner = 0;
    for (int nc = j; nc <= n; ++nc) inner += 1ull << (nc - j);
    sum += 10ull * inner;
  }
  return sum + base;
}

/// Workspace size: position + coin + (inverters) ancilla register.
inline int qubit_count(std::uint64_t N, Flavor flavor) {
  const int n = detail::exact_log2(N);
  if (flavor == Flavor::Rotations) return n + 1;
  return n == 1 ? 2 : 2 * n;
}

/// Lookup key for tallies and duration tables: controlled single-qubit kinds
/// get a "c" prefix, anything Toffoli-shaped is "toffoli".
inline std::string duration_key(const GateOp& g) {
  const std::size_t m = g.controls.size();
  if (g.kind == GateKind::Toffoli || (g.kind == GateKind::X && m == 2)) return "toffoli";
  if (m == 0) return kind_name(g.kind);
  if (m == 1) return std::string("c") + kind_name(g.kind);
  return "c" + std::to_string(m) + kind_name(g.kind);
}

struct GateTally {
  std::map<std::string, std::uint64_t> by_kind;
  std::uint64_t total = 0;
  std::uint64_t depth = 0;  // no gates run in parallel, so depth == total
};

inline GateTally gate_count_empirical(const Circuit& circuit) {
  GateTally tally;
  for (const auto& g : circuit.gates) ++tally.by_kind[duration_key(g)];
  tally.total = circuit.gates.size();
  tally.depth = tally.total;
  return tally;
}

using DurationTable = std::map<std::string, double>;

/// Synthetic out-of-the-box timing: 1 unit per single-qubit gate, 2 per
/// controlled gate, 6 per Toffoli. Real tables are user-supplied.
inline DurationTable default_duration_table() {
  DurationTable t;
  for (const char* k : {"x", "h", "ry", "rz", "phase", "u3"}) {
    t[k] = 1.0;
    t[std::string("c") + k] = 2.0;
  }
  t["toffoli"] = 6.0;
  return t;
}

/// One `gate_kind duration_seconds` pair per line; '#' starts a comment.
inline DurationTable parse_duration_table(std::istream& in) {
  DurationTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string key;
    if (!(row >> key)) continue;
    double seconds;
    if (!(row >> seconds) || seconds < 0.0)
      throw TableError("duration table line " + std::to_string(lineno) +
                       ": expected `gate_kind duration_seconds`");
    table[key] = seconds;
  }
  return table;
}

inline DurationTable load_duration_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open duration table: " + path);
  return parse_duration_table(in);
}

/// Strictly sequential execution-time model: the sum of per-gate durations,
/// nothing for state preparation, measurement or buffering.
inline double exec_time(const Circuit& circuit, const DurationTable& table) {
  double seconds = 0.0;
  for (const auto& g : circuit.gates) {
    const std::string key = duration_key(g);
    const auto it = table.find(key);
    if (it == table.end()) throw TableError("duration table has no entry for `" + key + "`");
    seconds += it->second;
  }
  return seconds;
}

struct VolumeInputs {
  int workspace = 0;       // circuit workspace, including connectivity extras
  int machine_qubits = 0;  // qubits in the machine
  double eps_eff = 0.0;    // average effective two-qubit error rate
};

/// min(n, 1/(n*eps))^2 evaluated at the submitted workspace.
inline double quantum_volume(const VolumeInputs& v) {
  if (v.eps_eff <= 0.0 || v.eps_eff >= 1.0)
    throw std::invalid_argument("eps_eff must lie in (0, 1)");
  if (v.workspace < 1 || v.workspace >= v.machine_qubits)
    throw std::invalid_argument("workspace must satisfy 0 < n < machine qubits");
  const double n = v.workspace;
  const double m = std::min(n, 1.0 / (n * v.eps_eff));
  return m * m;
}

struct ResourceReport {
  std::uint64_t state_space = 0;  // N
  Flavor flavor = Flavor::Inverters;
  int steps = 1;
  std::uint64_t formula_per_step = 0;
  std::uint64_t formula_total = 0;
  GateTally empirical_per_step;
  std::uint64_t empirical_total = 0;
  int qubits = 0;
  std::optional<double> exec_time_per_step;
  std::optional<double> exec_time_total;
  std::optional<double> volume;
};

/// Assembles the full report for one expanded per-step circuit. Formula and
/// empirical counts are reported side by side, never forced to agree; time
/// and volume stay empty without their inputs.
inline ResourceReport build_resource_report(const Circuit& step_circuit, std::uint64_t N,
                                            Flavor flavor, int steps,
                                            const std::optional<DurationTable>& table,
                                            const std::optional<VolumeInputs>& volume_inputs) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  ResourceReport rep;
  rep.state_space = N;
  rep.flavor = flavor;
  rep.steps = steps;
  rep.formula_per_step = gate_count_formula(N, flavor);
  rep.formula_total = rep.formula_per_step * static_cast<std::uint64_t>(steps);
  rep.empirical_per_step = gate_count_empirical(step_circuit);
  rep.empirical_total = rep.empirical_per_step.total * static_cast<std::uint64_t>(steps);
  rep.qubits = qubit_count(N, flavor);
  if (table.has_value()) {
    rep.exec_time_per_step = exec_time(step_circuit, *table);
    rep.exec_time_total = *rep.exec_time_per_step * steps;
  }
  if (volume_inputs.has_value()) rep.volume = quantum_volume(*volume_inputs);
  return rep;
}

}  // namespace qwalk
