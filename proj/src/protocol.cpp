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

#include "homog/protocol.hpp"

#include <cmath>

#include "homog/gates.hpp"

namespace homog {

namespace {

void require_qubit(const DensityMatrix& state, const char* which) {
  if (state.dim() != 2) {
    throw std::invalid_argument(std::string(which) +
                                ": only single-qubit states are supported");
  }
}

// Re-wraps a raw 2x2 marginal as a validated state; symmetrization absorbs
// the last bits of round-off from repeated conjugations.
DensityMatrix as_qubit_state(const Matrix& mat) {
  return DensityMatrix((mat + mat.adjoint()) / 2.0, SubsystemShape::qubits(1));
}

double step_distance(const DensityMatrix& system, const DensityMatrix& target) {
  return hilbert_schmidt_distance(system, target);
}

double step_gamma(double current, double previous) {
  return previous < 1e-14 ? 0.0 : current / previous;
}

}  // namespace

void ProtocolConfig::validate() const {
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("ProtocolConfig: eta must be finite");
  }
  if (num_rounds < 0) {
    throw std::invalid_argument("ProtocolConfig: num_rounds must be >= 0");
  }
  if (!(delta_target > 0.0 && delta_target < 1.0)) {
    throw std::invalid_argument("ProtocolConfig: delta_target must lie in (0, 1)");
  }
  if (full_state_qubit_cap < 1) {
    throw std::invalid_argument("ProtocolConfig: full_state_qubit_cap must be >= 1");
  }
  if (mode == ProtocolMode::FullState && num_rounds > full_state_qubit_cap) {
    throw std::invalid_argument(
        "ProtocolConfig: FullState mode exceeds the qubit cap");
  }
}

std::pair<DensityMatrix, DensityMatrix> collide(const DensityMatrix& system,
                                                const DensityMatrix& ancilla,
                                                double eta) {
  require_qubit(system, "collide");
  require_qubit(ancilla, "collide");
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("collide: eta must be finite");
  }
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  const Complex ics(0.0, c * s);
  const Matrix& rho = system.mat();
  const Matrix& xi = ancilla.mat();
  const Matrix commutator = xi * rho - rho * xi;
  const Matrix system_out = c * c * rho + s * s * xi + ics * commutator;
  const Matrix ancilla_out = s * s * rho + c * c * xi - ics * commutator;
  return {as_qubit_state(system_out), as_qubit_state(ancilla_out)};
}

Trajectory run_protocol(const DensityMatrix& initial,
                        const DensityMatrix& reservoir,
                        const ProtocolConfig& config) {
  config.validate();
  require_qubit(initial, "run_protocol");
  require_qubit(reservoir, "run_protocol");

  Trajectory trajectory;
  trajectory.steps.reserve(config.num_rounds + 1);
  const double initial_distance = step_distance(initial, reservoir);
  trajectory.steps.push_back(
      TrajectoryStep{0, initial, reservoir, initial_distance, 0.0});

  if (config.mode == ProtocolMode::Reduced) {
    DensityMatrix system = initial;
    for (int round = 1; round <= config.num_rounds; ++round) {
      auto [system_out, ancilla_out] = collide(system, reservoir, config.eta);
      system = std::move(system_out);
      const double distance = step_distance(system, reservoir);
      const double gamma =
          step_gamma(distance, trajectory.steps.back().distance_to_target);
      trajectory.steps.push_back(
          TrajectoryStep{round, system, std::move(ancilla_out), distance, gamma});
    }
    return trajectory;
  }

  // FullState: conjugate the joint (N+1)-qubit state by each collision
  // unitary (wire 0 = system, wire k = the k-th reservoir qubit) and read
  // off the marginals.
  const int num_wires = config.num_rounds + 1;
  const SubsystemShape joint_shape = SubsystemShape::qubits(num_wires);
  Matrix joint = initial.mat();
  for (int k = 1; k <= config.num_rounds; ++k) {
    joint = kron(joint, reservoir.mat());
  }
  const UnitaryGate collision = partial_swap(config.eta);
  for (int round = 1; round <= config.num_rounds; ++round) {
    conjugate_gate_inplace(joint, collision, {0, round}, num_wires);
    const DensityMatrix system =
        as_qubit_state(partial_trace(joint, joint_shape, {0}));
    const DensityMatrix ancilla =
        as_qubit_state(partial_trace(joint, joint_shape, {round}));
    const double distance = step_distance(system, reservoir);
    const double gamma =
        step_gamma(distance, trajectory.steps.back().distance_to_target);
    trajectory.steps.push_back(
        TrajectoryStep{round, std::move(system), std::move(ancilla), distance,
                       gamma});
  }
  return trajectory;
}

ConvergenceReport convergence_report(const Trajectory& trajectory,
                                     double delta) {
  if (trajectory.steps.empty()) {
    throw std::invalid_argument("convergence_report: trajectory is empty");
  }
  ConvergenceReport report;
  report.monotone = true;
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    const double distance = trajectory.steps[i].distance_to_target;
    if (!report.first_round_below_delta.has_value() && distance <= delta) {
      report.first_round_below_delta = trajectory.steps[i].round;
    }
    if (i > 0) {
      const double previous = trajectory.steps[i - 1].distance_to_target;
      if (distance > previous + 1e-12) report.monotone = false;
      if (previous >= 1e-14) {
        report.gamma_max = std::max(report.gamma_max, distance / previous);
      }
    }
  }
  return report;
}

std::optional<int> steady_state_threshold(const DensityMatrix& initial,
                                          const DensityMatrix& reservoir,
                                          double eta, double delta,
                                          int max_rounds) {
  require_qubit(initial, "steady_state_threshold");
  require_qubit(reservoir, "steady_state_threshold");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("steady_state_threshold: delta must lie in (0, 1)");
  }
  if (max_rounds < 1) {
    throw std::invalid_argument("steady_state_threshold: max_rounds must be >= 1");
  }
  DensityMatrix system = initial;
  if (hilbert_schmidt_distance(system, reservoir) <= delta) return 0;
  for (int round = 1; round <= max_rounds; ++round) {
    system = collide(system, reservoir, eta).first;
    if (hilbert_schmidt_distance(system, reservoir) <= delta) return round;
  }
  return std::nullopt;
}

}  // namespace homog
