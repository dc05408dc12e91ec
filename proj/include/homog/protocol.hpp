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

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "homog/states.hpp"

namespace homog {

/**
 * How the homogenization run is simulated.
 *
 * Reduced evolves only the 2x2 system state through the exact closed-form
 * collision map (each reservoir qubit is fresh and used once, so the reduced
 * dynamics compose exactly).  FullState evolves the joint
 * (N+1)-qubit density matrix by conjugating with each collision unitary and
 * extracts all marginals; it exists to validate Reduced mode and to feed the
 * channel analysis.
 */
enum class ProtocolMode { Reduced, FullState };

struct ProtocolConfig {
  double eta = 0.0;
  int num_rounds = 0;
  ProtocolMode mode = ProtocolMode::Reduced;
  double delta_target = 1e-3;
  /** FullState joint register is capped at full_state_qubit_cap + 1 wires. */
  int full_state_qubit_cap = 10;

  /**
   * @throws std::invalid_argument if eta is not finite, num_rounds < 0,
   *   delta_target is outside (0, 1), or FullState mode exceeds the cap.
   */
  void validate() const;
};

/**
 * Snapshot of round `round` (round 0 is the initial state, before any
 * collision).
 *
 * `ancilla_state` is the marginal of the reservoir qubit consumed in this
 * round, after its collision; at round 0 it is the pristine reservoir state.
 * `distance_to_target` is the Hilbert-Schmidt distance from the system state
 * to the reservoir target.  `contraction_factor` is the empirical per-round
 * ratio of consecutive distances (0 at round 0 and whenever the previous
 * distance is below 1e-14).
 */
struct TrajectoryStep {
  int round = 0;
  DensityMatrix system_state;
  DensityMatrix ancilla_state;
  double distance_to_target = 0.0;
  double contraction_factor = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
};

/**
 * One collision between the system and a fresh reservoir qubit under the
 * partial swap with angle eta.  Returns the post-collision pair
 * (system', ancilla'):
 *
 *   system'  = cos^2(eta) rho + sin^2(eta) xi + i cos(eta) sin(eta) [xi, rho]
 *   ancilla' = sin^2(eta) rho + cos^2(eta) xi + i cos(eta) sin(eta) [rho, xi]
 *
 * These are the two marginals of U (rho (x) xi) U^dag for the partial swap U.
 *
 * @throws std::invalid_argument unless both states are single-qubit.
 */
std::pair<DensityMatrix, DensityMatrix> collide(const DensityMatrix& system,
                                                const DensityMatrix& ancilla,
                                                double eta);

/**
 * Runs the homogenization protocol for config.num_rounds collisions and
 * records the trajectory (one step per round, including round 0).  Reduced
 * and FullState modes produce identical system trajectories within 1e-10.
 *
 * @throws std::invalid_argument on invalid config or non-qubit states.
 */
Trajectory run_protocol(const DensityMatrix& initial,
                        const DensityMatrix& reservoir,
                        const ProtocolConfig& config);

struct ConvergenceReport {
  /** First round with distance_to_target <= delta; absent if never reached. */
  std::optional<int> first_round_below_delta;
  /** Whether the distance is non-increasing across all recorded rounds. */
  bool monotone = false;
  /**
   * Largest ratio of consecutive distances, skipping rounds whose previous
   * distance is below 1e-14; 0 when every ratio is skipped.
   */
  double gamma_max = 0.0;
};

/** @throws std::invalid_argument if the trajectory is empty. */
ConvergenceReport convergence_report(const Trajectory& trajectory, double delta);

/**
 * Smallest round count N <= max_rounds with
 * hilbert_schmidt_distance(system^(N), reservoir) <= delta in Reduced mode,
 * or std::nullopt if the bound is never met.
 *
 * @throws std::invalid_argument unless delta is in (0, 1) and max_rounds >= 1.
 */
std::optional<int> steady_state_threshold(const DensityMatrix& initial,
                                          const DensityMatrix& reservoir,
                                          double eta, double delta,
                                          int max_rounds);

}  // namespace homog
