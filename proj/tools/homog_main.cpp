// Copyright 2026 The homogenizer developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "homog/experiment.hpp"

namespace {

using homog::CouplingParams;
using homog::ExperimentSpec;
using homog::ProtocolMode;
using homog::StateDescriptor;

/** Settings after merging the --spec file with command-line overrides. */
struct RawSettings {
  std::optional<double> eta;
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<int> rounds;
  std::optional<std::string> initial;
  std::optional<std::string> reservoir;
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::optional<bool> measure;
};

std::string lowercase(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return text;
}

double parse_double_value(const std::string& value, const std::string& key) {
  std::size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("spec: malformed number for '" + key + "'");
  }
  if (used != value.size()) {
    throw std::invalid_argument("spec: malformed number for '" + key + "'");
  }
  return parsed;
}

int parse_int_value(const std::string& value, const std::string& key) {
  std::size_t used = 0;
  int parsed = 0;
  try {
    parsed = std::stoi(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("spec: malformed integer for '" + key + "'");
  }
  if (used != value.size()) {
    throw std::invalid_argument("spec: malformed integer for '" + key + "'");
  }
  return parsed;
}

bool parse_bool_value(const std::string& value, const std::string& key) {
  const std::string lower = lowercase(value);
  if (lower == "true" || lower == "1" || lower == "yes") return true;
  if (lower == "false" || lower == "0" || lower == "no") return false;
  throw std::invalid_argument("spec: malformed boolean for '" + key + "'");
}

RawSettings read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("spec: cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  RawSettings raw;
  for (const auto& [key, value] : homog::parse_config(buffer.str())) {
    if (key == "eta") {
      raw.eta = parse_double_value(value, key);
    } else if (key == "alpha") {
      raw.alpha = parse_double_value(value, key);
    } else if (key == "delta") {
      raw.delta = parse_double_value(value, key);
    } else if (key == "rounds") {
      raw.rounds = parse_int_value(value, key);
    } else if (key == "initial") {
      raw.initial = value;
    } else if (key == "reservoir") {
      raw.reservoir = value;
    } else if (key == "mode") {
      raw.mode = value;
    } else if (key == "out") {
      raw.out = value;
    } else if (key == "measure") {
      raw.measure = parse_bool_value(value, key);
    } else {
      throw std::invalid_argument("spec: unknown key '" + key + "'");
    }
  }
  return raw;
}

/** The uniform flag set every subcommand accepts. */
struct FlagSet {
  std::string spec_file;
  std::string out;
  std::string initial;
  std::string reservoir;
  std::string mode;
  double eta = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  int rounds = 0;
  bool measure = false;

  CLI::Option* spec_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* initial_opt = nullptr;
  CLI::Option* reservoir_opt = nullptr;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* eta_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* rounds_opt = nullptr;
  CLI::Option* measure_opt = nullptr;
};

void register_flags(CLI::App* cmd, FlagSet& flags) {
  flags.spec_opt = cmd->add_option("--spec", flags.spec_file,
                                   "Key-value spec file (flags override it)");
  flags.out_opt = cmd->add_option("--out", flags.out,
                                  "Output path (stdout when omitted)");
  flags.eta_opt = cmd->add_option(
      "--eta", flags.eta, "Partial-swap angle (exclusive with --alpha)");
  flags.alpha_opt = cmd->add_option(
      "--alpha", flags.alpha, "Swap exponent (exclusive with --eta)");
  flags.rounds_opt =
      cmd->add_option("--rounds", flags.rounds, "Number of collision rounds");
  flags.initial_opt = cmd->add_option(
      "--initial", flags.initial, "System state: 0, 1, +, i, or x,y,z");
  flags.reservoir_opt = cmd->add_option(
      "--reservoir", flags.reservoir, "Reservoir state: 0, 1, +, i, or x,y,z");
  flags.delta_opt = cmd->add_option("--delta", flags.delta,
                                    "Convergence threshold in (0, 1)");
  flags.mode_opt = cmd->add_option("--mode", flags.mode,
                                   "Simulation mode: reduced or full");
  flags.measure_opt = cmd->add_flag(
      "--measure", flags.measure, "Append a wire-0 measurement to QASM output");
}

RawSettings merge_settings(const FlagSet& flags) {
  RawSettings raw = flags.spec_opt->count() > 0
                        ? read_spec_file(flags.spec_file)
                        : RawSettings{};
  // A coupling flag supersedes whichever parameterization the file used;
  // giving both flags is caught later as an over-determined coupling.
  if (flags.eta_opt->count() > 0) {
    raw.eta = flags.eta;
    if (flags.alpha_opt->count() == 0) raw.alpha.reset();
  }
  if (flags.alpha_opt->count() > 0) {
    raw.alpha = flags.alpha;
    if (flags.eta_opt->count() == 0) raw.eta.reset();
  }
  if (flags.rounds_opt->count() > 0) raw.rounds = flags.rounds;
  if (flags.initial_opt->count() > 0) raw.initial = flags.initial;
  if (flags.reservoir_opt->count() > 0) raw.reservoir = flags.reservoir;
  if (flags.delta_opt->count() > 0) raw.delta = flags.delta;
  if (flags.mode_opt->count() > 0) raw.mode = flags.mode;
  if (flags.measure_opt->count() > 0) raw.measure = true;
  if (flags.out_opt->count() > 0) raw.out = flags.out;
  return raw;
}

CouplingParams resolve_coupling(const RawSettings& raw) {
  if (raw.eta.has_value() && raw.alpha.has_value()) {
    throw std::invalid_argument(
        "give exactly one of --eta / --alpha, not both");
  }
  if (raw.eta.has_value()) return CouplingParams::from_eta(*raw.eta);
  if (raw.alpha.has_value()) return CouplingParams::from_alpha(*raw.alpha);
  throw std::invalid_argument("one of --eta / --alpha is required");
}

ProtocolMode resolve_mode(const RawSettings& raw) {
  const std::string mode = lowercase(raw.mode.value_or("reduced"));
  if (mode == "reduced") return ProtocolMode::Reduced;
  if (mode == "full" || mode == "fullstate") return ProtocolMode::FullState;
  throw std::invalid_argument("unknown mode '" + *raw.mode +
                              "' (expected reduced or full)");
}

ExperimentSpec resolve_spec(const RawSettings& raw, int default_rounds) {
  ExperimentSpec spec;
  spec.initial = StateDescriptor::parse(raw.initial.value_or("1"));
  spec.reservoir = StateDescriptor::parse(raw.reservoir.value_or("0"));
  spec.coupling = resolve_coupling(raw);
  spec.num_rounds = raw.rounds.value_or(default_rounds);
  spec.mode = resolve_mode(raw);
  spec.delta = raw.delta.value_or(1e-3);
  spec.measure = raw.measure.value_or(false);
  return spec;
}

void write_output(const std::optional<std::string>& path,
                  const std::string& content) {
  if (!path.has_value() || path->empty() || *path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot write to '" + *path + "'");
  }
  out << content;
  if (!out.good()) {
    throw std::invalid_argument("failed while writing '" + *path + "'");
  }
}

int cmd_simulate(const FlagSet& flags) {
  const RawSettings raw = merge_settings(flags);
  const ExperimentSpec spec = resolve_spec(raw, 0);
  homog::ProtocolConfig config;
  config.eta = spec.coupling.eta;
  config.num_rounds = spec.num_rounds;
  config.mode = spec.mode;
  config.delta_target = spec.delta;
  const homog::Trajectory trajectory = homog::run_protocol(
      spec.initial.state(), spec.reservoir.state(), config);
  write_output(raw.out, homog::trajectory_csv(trajectory));
  return 0;
}

int cmd_decompose(const FlagSet& flags) {
  const RawSettings raw = merge_settings(flags);
  const CouplingParams coupling = resolve_coupling(raw);
  const homog::QuantumCircuit circuit =
      homog::build_decomposition_circuit(coupling);
  write_output(raw.out, homog::emit_qasm(circuit));
  return 0;
}

int cmd_homogenize_qasm(const FlagSet& flags) {
  const RawSettings raw = merge_settings(flags);
  const ExperimentSpec spec = resolve_spec(raw, 0);
  const homog::QuantumCircuit circuit =
      homog::build_homogenization_circuit(spec);
  const std::optional<int> measure_wire =
      spec.measure ? std::optional<int>(0) : std::nullopt;
  write_output(raw.out, homog::emit_qasm(circuit, measure_wire));
  return 0;
}

int cmd_analyze(const FlagSet& flags) {
  const RawSettings raw = merge_settings(flags);
  const ExperimentSpec spec = resolve_spec(raw, 1);
  const homog::CorrectabilityReport report = homog::correctability_report(
      spec.coupling.eta, spec.num_rounds, spec.reservoir.state(),
      homog::default_probe_states());
  write_output(raw.out,
               homog::report_json(report, spec.coupling, spec.num_rounds));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "homog: collision-model homogenization simulator, analyzer, and "
      "OpenQASM 2.0 exporter"};
  app.require_subcommand(1);

  FlagSet simulate_flags;
  FlagSet decompose_flags;
  FlagSet homogenize_flags;
  FlagSet analyze_flags;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the collision protocol and write the trajectory CSV");
  register_flags(simulate, simulate_flags);

  CLI::App* decompose = app.add_subcommand(
      "decompose", "Emit the two-qubit fractional-swap circuit as QASM");
  register_flags(decompose, decompose_flags);

  CLI::App* homogenize = app.add_subcommand(
      "homogenize-qasm",
      "Emit the full (N+1)-wire homogenization circuit as QASM");
  register_flags(homogenize, homogenize_flags);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Write the channel correctability report as JSON");
  register_flags(analyze, analyze_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(simulate_flags);
    if (decompose->parsed()) return cmd_decompose(decompose_flags);
    if (homogenize->parsed()) return cmd_homogenize_qasm(homogenize_flags);
    if (analyze->parsed()) return cmd_analyze(analyze_flags);
  } catch (const homog::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
