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

#include "homog/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace homog {

namespace {

std::string format_double(double value) {
  char buffer[64];
  // `+ 0.0` folds negative zero into plain zero so serialized output never
  // depends on the sign bit of a vanished entry.
  std::snprintf(buffer, sizeof(buffer), "%.17g", value + 0.0);
  return buffer;
}

std::string strip(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

double parse_double(const std::string& text, const char* what) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": malformed number '" +
                                text + "'");
  }
  if (consumed != text.size()) {
    throw std::invalid_argument(std::string(what) + ": malformed number '" +
                                text + "'");
  }
  return value;
}

}  // namespace

StateDescriptor StateDescriptor::parse(const std::string& text) {
  const std::string token = strip(text);
  StateDescriptor descriptor;
  if (token == "0") {
    descriptor = StateDescriptor{0.0, 0.0, 1.0};
  } else if (token == "1") {
    descriptor = StateDescriptor{0.0, 0.0, -1.0};
  } else if (token == "+") {
    descriptor = StateDescriptor{1.0, 0.0, 0.0};
  } else if (token == "i") {
    descriptor = StateDescriptor{0.0, 1.0, 0.0};
  } else {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = token.find(',', start);
      if (comma == std::string::npos) {
        parts.push_back(strip(token.substr(start)));
        break;
      }
      parts.push_back(strip(token.substr(start, comma - start)));
      start = comma + 1;
    }
    if (parts.size() != 3) {
      throw std::invalid_argument(
          "state descriptor: expected a preset (0, 1, +, i) or 'x,y,z', got '" +
          token + "'");
    }
    descriptor.x = parse_double(parts[0], "state descriptor");
    descriptor.y = parse_double(parts[1], "state descriptor");
    descriptor.z = parse_double(parts[2], "state descriptor");
    const double norm = std::sqrt(descriptor.x * descriptor.x +
                                  descriptor.y * descriptor.y +
                                  descriptor.z * descriptor.z);
    if (norm > 1.0 + kHermitianTol) {
      throw std::invalid_argument(
          "state descriptor: Bloch vector norm exceeds 1");
    }
  }
  return descriptor;
}

DensityMatrix StateDescriptor::state() const { return bloch_state(x, y, z); }

bool StateDescriptor::is_pure() const {
  const double norm = std::sqrt(x * x + y * y + z * z);
  return std::abs(norm - 1.0) <= kHermitianTol;
}

void StateDescriptor::append_preparation(QuantumCircuit& circuit,
                                         int wire) const {
  if (!is_pure()) {
    throw std::invalid_argument(
        "state preparation: mixed states cannot be prepared by gates");
  }
  // |psi> = cos(theta/2) |0> + e^{i phi} sin(theta/2) |1> with the polar
  // angle theta measured from +z; ry(theta) then u1(phi) builds it from |0>.
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  if (theta > 1e-12) {
    circuit.append(ry_gate(theta), {wire}, "ry", {theta});
    const double phi = std::atan2(y, x);
    if (std::abs(phi) > 1e-12) {
      circuit.append(u1_gate(phi), {wire}, "u1", {phi});
    }
  }
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> values;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = strip(line);
    if (line.empty()) continue;
    const std::size_t equals = line.find('=');
    if (equals == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  ": expected 'key = value'");
    }
    const std::string key = strip(line.substr(0, equals));
    const std::string value = strip(line.substr(equals + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  ": empty key");
    }
    values[key] = value;
  }
  return values;
}

QuantumCircuit build_homogenization_circuit(const ExperimentSpec& spec) {
  if (spec.num_rounds < 0 || spec.num_rounds > 20) {
    throw std::invalid_argument(
        "build_homogenization_circuit: round count outside [0, 20]");
  }
  QuantumCircuit circuit(spec.num_rounds + 1);
  spec.initial.append_preparation(circuit, 0);
  for (int k = 1; k <= spec.num_rounds; ++k) {
    spec.reservoir.append_preparation(circuit, k);
  }
  const QuantumCircuit block = build_decomposition_circuit(spec.coupling);
  for (int k = 1; k <= spec.num_rounds; ++k) {
    for (const GateOp& op : block.ops()) {
      std::vector<int> wires;
      wires.reserve(op.wires.size());
      for (int w : op.wires) {
        wires.push_back(w == 0 ? 0 : k);
      }
      circuit.append(op.gate, std::move(wires), op.name, op.params);
    }
  }
  return circuit;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::ostringstream out;
  out << "round,rho_00_re,rho_00_im,rho_01_re,rho_01_im,rho_10_re,rho_10_im,"
         "rho_11_re,rho_11_im,distance,gamma\n";
  for (const TrajectoryStep& step : trajectory.steps) {
    const Matrix& rho = step.system_state.mat();
    out << step.round;
    for (Eigen::Index r = 0; r < 2; ++r) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        out << ',' << format_double(rho(r, c).real()) << ','
            << format_double(rho(r, c).imag());
      }
    }
    out << ',' << format_double(step.distance_to_target) << ','
        << format_double(step.contraction_factor) << '\n';
  }
  return out.str();
}

std::string report_json(const CorrectabilityReport& report,
                        const CouplingParams& coupling, int num_rounds) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"kl_residual\": " << format_double(report.kl_residual) << ",\n";
  out << "  \"forgetfulness\": " << format_double(report.forgetfulness) << ",\n";
  out << "  \"recovery_fidelity\": " << format_double(report.recovery_fidelity)
      << ",\n";
  out << "  \"diamond_lower\": " << format_double(report.diamond_lower) << ",\n";
  out << "  \"diamond_upper\": " << format_double(report.diamond_upper) << ",\n";
  out << "  \"delta_bound\": " << format_double(report.delta_bound) << ",\n";
  out << "  \"k\": " << report.env_dim << ",\n";
  out << "  \"eta\": " << format_double(coupling.eta) << ",\n";
  out << "  \"alpha\": " << format_double(coupling.alpha) << ",\n";
  out << "  \"rounds\": " << num_rounds << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace homog
