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
#include <string>
#include <vector>

#include "homog/linalg.hpp"

namespace homog {

/**
 * A validated unitary on a register of qubits.
 *
 * Wire convention used throughout the library: qubit 0 is the leftmost
 * tensor factor, i.e. the most significant bit of a basis-state index.
 */
class UnitaryGate {
 public:
  /**
   * @throws std::invalid_argument if the matrix is not square or its
   *   dimension is not a power of two (>= 2).
   * @throws numerical_error if U^dag U deviates from the identity by more
   *   than kUnitaryTol.
   */
  explicit UnitaryGate(Matrix mat);

  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  int arity() const { return arity_; }

 private:
  Matrix mat_;
  int arity_ = 0;
};

/**
 * One gate placement.  `wires` lists the qubits the gate acts on, most
 * significant factor first (for cx the control wire precedes the target).
 * `name`/`params` carry the OpenQASM mnemonic when the gate has one.
 */
struct GateOp {
  UnitaryGate gate;
  std::vector<int> wires;
  std::string name;
  std::vector<double> params;
};

/** An ordered list of gate placements on a fixed-width qubit register. */
class QuantumCircuit {
 public:
  explicit QuantumCircuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<GateOp>& ops() const { return ops_; }

  /**
   * Appends a gate acting on the given wires (in order).
   *
   * @throws std::invalid_argument if the wire count does not match the gate
   *   arity, a wire is out of range, or wires repeat within the op.
   */
  void append(UnitaryGate gate, std::vector<int> wires, std::string name = {},
              std::vector<double> params = {});

 private:
  int num_qubits_ = 0;
  std::vector<GateOp> ops_;
};

/** Gate-count summary of a circuit (by arity). */
struct GateCounts {
  int cnot_count = 0;          // two-qubit ops
  int single_qubit_count = 0;  // one-qubit ops
};

GateCounts count_gates(const QuantumCircuit& circuit);

/**
 * The coupled parameterization of the collision gate: the partial-swap angle
 * eta, the swap exponent alpha, and the exponent denominator n, linked by
 * -2 eta = pi / n and alpha = 1 / n (so alpha = -2 eta / pi).  `n` is
 * +-infinity when alpha == 0.
 */
struct CouplingParams {
  double eta = 0.0;
  double alpha = 0.0;
  double n = 0.0;

  /** @throws std::invalid_argument if eta is not finite. */
  static CouplingParams from_eta(double eta);
  /** @throws std::invalid_argument if alpha is not finite. */
  static CouplingParams from_alpha(double alpha);
};

/** Identity on a 2^arity-dimensional register. */
UnitaryGate identity_gate(int arity);

/** The two-qubit SWAP. */
UnitaryGate swap_gate();

/** CNOT with the first wire as control: |c t> -> |c, t xor c>. */
UnitaryGate cnot_gate();

/** OpenQASM u1(lambda) = diag(1, e^{i lambda}). */
UnitaryGate u1_gate(double lambda);

/** OpenQASM ry(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]. */
UnitaryGate ry_gate(double theta);

/** OpenQASM rz(theta) = diag(e^{-i theta/2}, e^{i theta/2}). */
UnitaryGate rz_gate(double theta);

/**
 * Partial swap cos(eta) I + i sin(eta) SWAP: identity on |00>, |11> up to
 * the phase factor cos(eta) + i sin(eta); central block
 * [[cos eta, i sin eta], [i sin eta, cos eta]].
 */
UnitaryGate partial_swap(double eta);

/**
 * Fractional swap SWAP^alpha: the sum of the three triplet Bell projectors
 * plus e^{i pi alpha} times the singlet projector.  swap_alpha(0) = I,
 * swap_alpha(1) = SWAP, and alpha -> alpha + 2 is periodic.
 */
UnitaryGate swap_alpha(double alpha);

/**
 * Frobenius residual || partial_swap(eta) - e^{i eta} swap_alpha(alpha) ||_F
 * with alpha = -2 eta / pi; the two families coincide up to the global phase
 * e^{i eta}, so the residual is ~1e-15 for every nonzero eta.
 *
 * @throws std::invalid_argument when eta == 0 (the exponent denominator is
 *   undefined; compare against the identity directly in that limit).
 */
double verify_phase_equivalence(double eta);

/**
 * The single-qubit gate family used by the swap_alpha decomposition,
 * evaluated at the given coupling:
 *  - U1:             diag(1, e^{i pi alpha / 2})
 *  - RYQuarter:      (1/sqrt 2) [[1, -1], [1, 1]]    (ry(pi/2))
 *  - RYMinusQuarter: (1/sqrt 2) [[1, 1], [-1, 1]]    (ry(-pi/2))
 *  - RZEta:          diag(e^{-i eta}, e^{i eta})
 *  - RZMinus2Eta:    diag(e^{i eta}, e^{-i eta})     (rz(-2 eta))
 */
enum class SingleQubitKind { U1, RYQuarter, RYMinusQuarter, RZEta, RZMinus2Eta };

UnitaryGate single_qubit_gate(SingleQubitKind kind, const CouplingParams& params);

/**
 * A two-qubit circuit over {cx, u1, ry} whose compiled unitary equals
 * swap_alpha(params.alpha) exactly (no residual global phase), using 4 CNOT
 * and 5 single-qubit gates.
 *
 * The construction conjugates a controlled phase by CNOT + basis-change
 * layers: with G = ry(pi/2) and L = pi alpha / 2,
 *
 *   SWAP^alpha = CX10 . (I (x) G) . (u1(L) (x) u1(L)) . CX01 .
 *                (I (x) u1(-L)) . CX01 . (I (x) G^dag) . CX10
 *
 * where CX01 (CX10) denotes CNOT with control on wire 0 (wire 1).
 */
QuantumCircuit build_decomposition_circuit(const CouplingParams& params);

/**
 * Multiplies the circuit out into a single unitary on all wires (ops applied
 * in list order).
 *
 * @throws std::invalid_argument if 2^num_qubits exceeds the dense-size cap.
 */
UnitaryGate compile_circuit(const QuantumCircuit& circuit);

/**
 * min over theta of || a - e^{i theta} b ||_F, evaluated at the optimal
 * phase read off from tr(a^dag b).  When tr(a^dag b) == 0 the optimal phase
 * is undefined (the gates are Hilbert-Schmidt orthogonal); the residual is
 * still returned and, if supplied, *phase_undefined is set.
 *
 * @throws std::invalid_argument on dimension mismatch.
 */
double distance_up_to_global_phase(const UnitaryGate& a, const UnitaryGate& b,
                                   bool* phase_undefined = nullptr);

/**
 * Dense embedding of a gate acting on the given wires of a num_qubits
 * register (identity elsewhere).
 */
Matrix embed_gate(const UnitaryGate& gate, const std::vector<int>& wires,
                  int num_qubits);

/**
 * In-place left multiplication `state <- U_embedded * state`, where the gate
 * is embedded on the given wires of a num_qubits register and `state` has
 * 2^num_qubits rows (a statevector, a unitary accumulator, or one side of a
 * density matrix).  Linear in the number of entries of `state`.
 */
void apply_gate_inplace(Matrix& state, const UnitaryGate& gate,
                        const std::vector<int>& wires, int num_qubits);

/** In-place conjugation `rho <- U_embedded * rho * U_embedded^dag`. */
void conjugate_gate_inplace(Matrix& rho, const UnitaryGate& gate,
                            const std::vector<int>& wires, int num_qubits);

}  // namespace homog
