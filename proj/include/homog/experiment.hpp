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

#include <map>
#include <string>

#include "homog/channels.hpp"
#include "homog/protocol.hpp"
#include "homog/qasm.hpp"

namespace homog {

/**
 * A qubit-state descriptor as accepted on the command line: one of the
 * presets "0", "1", "+", "i", or an explicit Bloch vector "x,y,z" with
 * norm <= 1.
 */
struct StateDescriptor {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  /** @throws std::invalid_argument on unknown presets or malformed vectors. */
  static StateDescriptor parse(const std::string& text);

  DensityMatrix state() const;

  /** Whether the Bloch vector lies on the sphere (within kHermitianTol). */
  bool is_pure() const;

  /**
   * Gate ops (from the ry/u1 family) preparing this state from |0> on the
   * given wire of a circuit.
   *
   * @throws std::invalid_argument for mixed states (no unitary preparation).
   */
  void append_preparation(QuantumCircuit& circuit, int wire) const;
};

/** A fully resolved experiment configuration. */
struct ExperimentSpec {
  StateDescriptor initial;
  StateDescriptor reservoir;
  CouplingParams coupling;
  int num_rounds = 0;
  ProtocolMode mode = ProtocolMode::Reduced;
  double delta = 1e-3;
  bool measure = false;
};

/**
 * Parses a flat key-value configuration ("key = value" lines; '#' and ';'
 * start comments).  Returns the raw string map; interpretation and flag
 * override happen at the CLI layer.
 *
 * @throws std::invalid_argument on a malformed line.
 */
std::map<std::string, std::string> parse_config(const std::string& text);

/**
 * The (num_rounds + 1)-qubit homogenization circuit: preparation of the
 * initial state on wire 0 and the reservoir state on wires 1..N, followed by
 * one swap_alpha decomposition block coupling wire 0 with each reservoir
 * wire in turn.
 *
 * @throws std::invalid_argument for mixed-state descriptors or
 *   num_rounds outside [0, 20].
 */
QuantumCircuit build_homogenization_circuit(const ExperimentSpec& spec);

/**
 * Serializes a trajectory as CSV with the fixed header
 * round,rho_00_re,rho_00_im,rho_01_re,rho_01_im,rho_10_re,rho_10_im,
 * rho_11_re,rho_11_im,distance,gamma (one row per round, round 0 included).
 * Deterministic: equal trajectories serialize to equal bytes.
 */
std::string trajectory_csv(const Trajectory& trajectory);

/**
 * Serializes a correctability report as a single JSON object with the fixed
 * key order kl_residual, forgetfulness, recovery_fidelity, diamond_lower,
 * diamond_upper, delta_bound, k, eta, alpha, rounds.  Numbers carry 17
 * significant digits.
 */
std::string report_json(const CorrectabilityReport& report,
                        const CouplingParams& coupling, int num_rounds);

}  // namespace homog
