// Command-line front end: exact runs, shot experiments, variance sweeps,
// resource reports and flavor comparisons, emitted as JSON or CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qwalk/qwalk.hpp"

namespace {

using qwalk::json;

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  int n = 1;
  std::string flavor = "inverters";
  std::string format = "json";
  std::string out = "-";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

std::uint64_t resolve_seed(const CommonOpts& c) {
  if (c.seed_given) return c.seed;
  if (const char* env = std::getenv("WALK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("WALK_SEED is not a valid unsigned integer");
    }
  }
  return 0;
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << payload;
}

json tally_json(const qwalk::GateTally& tally) {
  json by_kind = json::object();
  for (const auto& [kind, count] : tally.by_kind) by_kind[kind] = count;
  return json{{"by_kind", by_kind}, {"total", tally.total}, {"depth", tally.depth}};
}

json spec_json(const qwalk::WalkSpec& spec) {
  return json{{"n", spec.n},
              {"steps", spec.steps},
              {"flavor", qwalk::flavor_name(spec.flavor)},
              {"initial_position", spec.initial_position},
              {"initial_coin", spec.initial_coin}};
}

int cmd_run(const CommonOpts& common, const qwalk::WalkSpec& spec, bool exact, long long shots,
            int batches, double p_gate, double p_meas) {
  const std::uint64_t seed = resolve_seed(common);
  qwalk::Distribution dist;
  std::map<int, double> ci;
  long long total_shots = 0;
  if (exact) {
    dist = qwalk::run_exact(spec);
  } else {
    qwalk::NoiseParams noise{p_gate, p_meas, seed};
    const qwalk::ExperimentResult res = qwalk::batch_experiment(spec, batches, shots, noise);
    dist = res.frequency;
    ci = res.ci_halfwidth;
    total_shots = res.shots;
  }
  if (common.format == "csv") {
    std::ostringstream csv;
    qwalk::write_distribution_csv(csv, dist, &ci);
    emit(common.out, csv.str());
    return 0;
  }
  json doc{{"spec", spec_json(spec)},
           {"distribution", qwalk::distribution_to_json(dist)},
           {"ci", qwalk::distribution_to_json(ci)},
           {"meta",
            {{"version", kVersion},
             {"mode", exact ? "exact" : "shots"},
             {"seed", seed},
             {"shots", total_shots},
             {"batches", exact ? 0 : batches},
             {"p_gate", p_gate},
             {"p_meas", p_meas},
             {"flavor", qwalk::flavor_name(spec.flavor)}}}};
  emit(common.out, doc.dump(2) + "\n");
  return 0;
}

int cmd_resources(const CommonOpts& common, int steps, const std::string& durations_path,
                  std::optional<qwalk::VolumeInputs> volume_inputs) {
  const qwalk::Flavor flavor = qwalk::parse_flavor(common.flavor);
  const std::uint64_t N = 1ull << common.n;
  std::optional<qwalk::DurationTable> table;
  if (!durations_path.empty())
    table = durations_path == "default" ? qwalk::default_duration_table()
                                        : qwalk::load_duration_table(durations_path);
  const qwalk::ResourceReport rep = qwalk::build_resource_report(
      qwalk::build_step(common.n, flavor), N, flavor, steps, table, volume_inputs);

  const auto opt = [](const std::optional<double>& v) {
    return v.has_value() ? json(*v) : json(nullptr);
  };
  json doc{{"n", common.n},
           {"state_space", rep.state_space},
           {"flavor", qwalk::flavor_name(rep.flavor)},
           {"steps", rep.steps},
           {"formula_gate_count", rep.formula_per_step},
           {"formula_gate_count_total", rep.formula_total},
           {"empirical_gate_count", tally_json(rep.empirical_per_step)},
           {"empirical_gate_count_total", rep.empirical_total},
           {"qubit_count", rep.qubits},
           {"exec_time_seconds", opt(rep.exec_time_per_step)},
           {"exec_time_seconds_total", opt(rep.exec_time_total)},
           {"quantum_volume", opt(rep.volume)}};
  emit(common.out, doc.dump(2) + "\n");
  return 0;
}

int cmd_variance(const CommonOpts& common, int max_steps) {
  const qwalk::Flavor flavor = qwalk::parse_flavor(common.flavor);
  const qwalk::VarianceSeries series = qwalk::variance_sweep(common.n, max_steps, flavor);
  if (common.format == "json") {
    json rows = json::array();
    for (const auto& p : series)
      rows.push_back({{"t", p.t}, {"sigma2_sim", p.simulated}, {"sigma2_theory", p.theoretical}});
    emit(common.out, json{{"n", common.n},
                          {"flavor", qwalk::flavor_name(flavor)},
                          {"series", rows}}
                             .dump(2) +
                         "\n");
    return 0;
  }
  std::ostringstream csv;
  csv << "t,sigma2_sim,sigma2_theory\n" << std::setprecision(17);
  for (const auto& p : series) csv << p.t << ',' << p.simulated << ',' << p.theoretical << '\n';
  emit(common.out, csv.str());
  return 0;
}

int cmd_compare(const CommonOpts& common, int steps, long long shots, double p_gate,
                double p_meas, const std::string& durations_path) {
  const std::uint64_t N = 1ull << common.n;
  const std::uint64_t seed = resolve_seed(common);
  const qwalk::DurationTable table = durations_path.empty() || durations_path == "default"
                                         ? qwalk::default_duration_table()
                                         : qwalk::load_duration_table(durations_path);
  json doc{{"n", common.n}, {"steps", steps}, {"state_space", N}};

  std::map<qwalk::Flavor, qwalk::Distribution> exact;
  for (const qwalk::Flavor f : {qwalk::Flavor::Inverters, qwalk::Flavor::Rotations}) {
    const qwalk::Circuit step = qwalk::build_step(common.n, f);
    qwalk::WalkSpec spec{common.n, steps, f};
    exact[f] = qwalk::run_exact(spec);
    doc[qwalk::flavor_name(f)] = {
        {"formula_gate_count", qwalk::gate_count_formula(N, f)},
        {"empirical_gate_count", qwalk::gate_count_empirical(step).total},
        {"qubit_count", qwalk::qubit_count(N, f)},
        {"exec_time_seconds", qwalk::exec_time(step, table)}};
  }
  doc["formula_gate_count_ratio"] =
      static_cast<double>(qwalk::gate_count_formula(N, qwalk::Flavor::Rotations)) /
      static_cast<double>(qwalk::gate_count_formula(N, qwalk::Flavor::Inverters));
  doc["exact_tv_distance"] = qwalk::total_variation(exact[qwalk::Flavor::Inverters],
                                                    exact[qwalk::Flavor::Rotations]);
  if (shots > 0) {
    json noisy{{"shots", shots}, {"p_gate", p_gate}, {"p_meas", p_meas}, {"seed", seed}};
    for (const qwalk::Flavor f : {qwalk::Flavor::Inverters, qwalk::Flavor::Rotations}) {
      qwalk::WalkSpec spec{common.n, steps, f};
      qwalk::NoiseParams noise{p_gate, p_meas, seed};
      const qwalk::ExperimentResult res = qwalk::run_shots(spec, shots, noise);
      noisy[std::string(qwalk::flavor_name(f)) + "_tv"] =
          qwalk::total_variation(res.frequency, exact[f]);
    }
    doc["noisy"] = noisy;
  } else {
    doc["noisy"] = nullptr;
  }
  emit(common.out, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete-time quantum walk circuits on an N-cycle: simulate and compare the "
               "multi-controlled-inverter and rotation-network architectures"};
  app.require_subcommand(1);

  CommonOpts common;
  qwalk::WalkSpec spec;
  bool exact = false;
  long long shots = 0;
  int batches = 1;
  int steps = 1;
  int max_steps = 0;
  double p_gate = 0.0, p_meas = 0.0;
  std::string durations_path;
  int workspace = 0, machine_qubits = 0;
  double eps = 0.0;

  const auto add_common = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--n", common.n, "position qubits (N = 2^n cycle states)")
        ->required()
        ->check(CLI::Range(1, 24));
    cmd->add_option("--flavor", common.flavor, "circuit architecture")
        ->check(CLI::IsMember({"inverters", "rotations"}))
        ->capture_default_str();
    cmd->add_option("--out", common.out, "output path ('-' for stdout)")->capture_default_str();
    if (with_format)
      cmd->add_option("--format", common.format, "output format")
          ->check(CLI::IsMember({"json", "csv"}))
          ->capture_default_str();
    cmd->add_option_function<std::uint64_t>(
           "--seed",
           [&](std::uint64_t v) {
             common.seed = v;
             common.seed_given = true;
           },
           "RNG seed (falls back to WALK_SEED, then 0)");
  };

  CLI::App* run = app.add_subcommand("run", "simulate a walk and emit its distribution");
  add_common(run, true);
  run->add_option("--steps", spec.steps, "coin flips t")->required()->check(CLI::NonNegativeNumber);
  run->add_flag("--exact", exact, "exact statevector distribution");
  run->add_option("--shots", shots, "sample this many shots instead")->check(CLI::PositiveNumber);
  run->add_option("--batches", batches, "batches of shots to pool")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--p-gate", p_gate, "per-gate per-qubit Pauli error probability")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--p-meas", p_meas, "per-bit readout flip probability")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--initial-position", spec.initial_position, "walker start state")
      ->capture_default_str();
  run->add_option("--initial-coin", spec.initial_coin, "coin start state")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();

  CLI::App* resources = app.add_subcommand("resources", "gate/qubit/time/volume report");
  add_common(resources, false);
  resources->add_option("--steps", steps, "coin flips t")->capture_default_str();
  resources->add_option("--durations", durations_path,
                        "duration table file ('default' for the built-in table)");
  resources->add_option("--workspace", workspace, "quantum-volume workspace size");
  resources->add_option("--eps", eps, "average effective two-qubit error rate");
  resources->add_option("--machine-qubits", machine_qubits, "machine qubit count");

  CLI::App* variance = app.add_subcommand("variance", "sigma^2(t) next to the quadratic law");
  add_common(variance, true);
  variance->add_option("--max-steps", max_steps, "largest t (must stay below N/2)")->required();

  CLI::App* compare = app.add_subcommand("compare", "side-by-side flavor comparison");
  add_common(compare, false);
  compare->add_option("--steps", steps, "coin flips t")->capture_default_str();
  compare->add_option("--shots", shots, "noisy shots per flavor (0 = skip)");
  compare->add_option("--p-gate", p_gate, "per-gate per-qubit Pauli error probability")
      ->check(CLI::Range(0.0, 1.0));
  compare->add_option("--p-meas", p_meas, "per-bit readout flip probability")
      ->check(CLI::Range(0.0, 1.0));
  compare->add_option("--durations", durations_path, "duration table file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(run)) {
      spec.n = common.n;
      spec.flavor = qwalk::parse_flavor(common.flavor);
      if (exact == (shots > 0)) {
        std::cerr << "run: pass exactly one of --exact or --shots\n";
        return 2;
      }
      if (spec.initial_position < 0 || spec.initial_position >= (1 << spec.n)) {
        std::cerr << "run: --initial-position must lie in [0, 2^n)\n";
        return 2;
      }
      return cmd_run(common, spec, exact, shots, batches, p_gate, p_meas);
    }
    if (app.got_subcommand(resources)) {
      std::optional<qwalk::VolumeInputs> vol;
      if (resources->count("--workspace") || resources->count("--eps") ||
          resources->count("--machine-qubits")) {
        if (resources->count("--workspace") && resources->count("--eps") &&
            resources->count("--machine-qubits"))
          vol = qwalk::VolumeInputs{workspace, machine_qubits, eps};
        // partial volume inputs leave the field null, still exit 0
      }
      return cmd_resources(common, steps, durations_path, vol);
    }
    if (app.got_subcommand(variance)) {
      if (variance->count("--format") == 0) common.format = "csv";  // series default
      return cmd_variance(common, max_steps);
    }
    if (app.got_subcommand(compare))
      return cmd_compare(common, steps, shots, p_gate, p_meas, durations_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
