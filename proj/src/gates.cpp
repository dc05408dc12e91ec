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

#include "homog/gates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace homog {

namespace {

constexpr double kPi = std::numbers::pi;

int arity_for_dim(Eigen::Index dim) {
  if (dim < 2) {
    throw std::invalid_argument("UnitaryGate: dimension must be at least 2");
  }
  int arity = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0) {
      throw std::invalid_argument(
          "UnitaryGate: dimension must be a power of two");
    }
    d /= 2;
    ++arity;
  }
  return arity;
}

void validate_wires(const std::vector<int>& wires, int arity, int num_qubits) {
  if (static_cast<int>(wires.size()) != arity) {
    throw std::invalid_argument("wire count does not match the gate arity");
  }
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] < 0 || wires[i] >= num_qubits) {
      throw std::invalid_argument("wire index out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (wires[i] == wires[j]) {
        throw std::invalid_argument("wires within one op must be distinct");
      }
    }
  }
}

// Flat-index offsets of each local basis state of the gate, placed on the
// given wires of the register (wires[0] is the local most significant bit),
// plus the combined bit mask occupied by the gate.
struct WirePlacement {
  std::vector<Eigen::Index> offsets;
  Eigen::Index mask = 0;
};

WirePlacement place_on_wires(const std::vector<int>& wires, int num_qubits) {
  const int k = static_cast<int>(wires.size());
  WirePlacement placement;
  placement.offsets.assign(std::size_t(1) << k, 0);
  for (int j = 0; j < k; ++j) {
    const Eigen::Index bit = Eigen::Index(1) << (num_qubits - 1 - wires[j]);
    placement.mask |= bit;
    for (std::size_t s = 0; s < placement.offsets.size(); ++s) {
      if ((s >> (k - 1 - j)) & 1U) placement.offsets[s] += bit;
    }
  }
  return placement;
}

}  // namespace

UnitaryGate::UnitaryGate(Matrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) {
    throw std::invalid_argument("UnitaryGate: matrix must be square");
  }
  arity_ = arity_for_dim(mat_.rows());
  const Matrix gram = mat_.adjoint() * mat_;
  const double residual =
      (gram - Matrix::Identity(mat_.rows(), mat_.cols())).cwiseAbs().maxCoeff();
  if (residual > kUnitaryTol) {
    throw numerical_error("UnitaryGate: matrix is not unitary within tolerance");
  }
}

QuantumCircuit::QuantumCircuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("QuantumCircuit: need at least one qubit");
  }
}

void QuantumCircuit::append(UnitaryGate gate, std::vector<int> wires,
                            std::string name, std::vector<double> params) {
  validate_wires(wires, gate.arity(), num_qubits_);
  ops_.push_back(GateOp{std::move(gate), std::move(wires), std::move(name),
                        std::move(params)});
}

GateCounts count_gates(const QuantumCircuit& circuit) {
  GateCounts counts;
  for (const GateOp& op : circuit.ops()) {
    if (op.gate.arity() == 1) {
      ++counts.single_qubit_count;
    } else if (op.gate.arity() == 2) {
      ++counts.cnot_count;
    }
  }
  return counts;
}

CouplingParams CouplingParams::from_eta(double eta) {
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("CouplingParams: eta must be finite");
  }
  CouplingParams params;
  params.eta = eta;
  params.alpha = -2.0 * eta / kPi;
  params.n = params.alpha == 0.0 ? std::numeric_limits<double>::infinity()
                                 : 1.0 / params.alpha;
  return params;
}

CouplingParams CouplingParams::from_alpha(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("CouplingParams: alpha must be finite");
  }
  CouplingParams params;
  params.alpha = alpha;
  params.eta = -kPi * alpha / 2.0;
  params.n = alpha == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / alpha;
  return params;
}

UnitaryGate identity_gate(int arity) {
  if (arity < 1 || arity > 14) {
    throw std::invalid_argument("identity_gate: arity out of range");
  }
  const Eigen::Index dim = Eigen::Index(1) << arity;
  return UnitaryGate(Matrix::Identity(dim, dim));
}

UnitaryGate swap_gate() {
  Matrix mat = Matrix::Zero(4, 4);
  mat(0, 0) = 1.0;
  mat(1, 2) = 1.0;
  mat(2, 1) = 1.0;
  mat(3, 3) = 1.0;
  return UnitaryGate(std::move(mat));
}

UnitaryGate cnot_gate() {
  Matrix mat = Matrix::Zero(4, 4);
  mat(0, 0) = 1.0;
  mat(1, 1) = 1.0;
  mat(2, 3) = 1.0;
  mat(3, 2) = 1.0;
  return UnitaryGate(std::move(mat));
}

UnitaryGate u1_gate(double lambda) {
  Matrix mat = Matrix::Zero(2, 2);
  mat(0, 0) = 1.0;
  mat(1, 1) = std::polar(1.0, lambda);
  return UnitaryGate(std::move(mat));
}

UnitaryGate ry_gate(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix mat(2, 2);
  mat << Complex(c, 0.0), Complex(-s, 0.0), Complex(s, 0.0), Complex(c, 0.0);
  return UnitaryGate(std::move(mat));
}

UnitaryGate rz_gate(double theta) {
  Matrix mat = Matrix::Zero(2, 2);
  mat(0, 0) = std::polar(1.0, -theta / 2.0);
  mat(1, 1) = std::polar(1.0, theta / 2.0);
  return UnitaryGate(std::move(mat));
}

UnitaryGate partial_swap(double eta) {
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("partial_swap: eta must be finite");
  }
  const double c = std::cos(eta);
  const Complex is(0.0, std::sin(eta));
  Matrix mat = Matrix::Zero(4, 4);
  mat(0, 0) = c + is;
  mat(1, 1) = c;
  mat(1, 2) = is;
  mat(2, 1) = is;
  mat(2, 2) = c;
  mat(3, 3) = c + is;
  return UnitaryGate(std::move(mat));
}

UnitaryGate swap_alpha(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("swap_alpha: alpha must be finite");
  }
  const Complex phase = std::polar(1.0, kPi * alpha);
  Matrix mat = Matrix::Zero(4, 4);
  mat(0, 0) = 1.0;
  mat(3, 3) = 1.0;
  mat(1, 1) = (1.0 + phase) / 2.0;
  mat(2, 2) = (1.0 + phase) / 2.0;
  mat(1, 2) = (1.0 - phase) / 2.0;
  mat(2, 1) = (1.0 - phase) / 2.0;
  return UnitaryGate(std::move(mat));
}

double verify_phase_equivalence(double eta) {
  if (eta == 0.0) {
    throw std::invalid_argument(
        "verify_phase_equivalence: eta must be nonzero (the exponent "
        "denominator is undefined at eta == 0)");
  }
  const CouplingParams params = CouplingParams::from_eta(eta);
  const Complex phase = std::polar(1.0, eta);
  return (partial_swap(eta).mat() - phase * swap_alpha(params.alpha).mat())
      .norm();
}

UnitaryGate single_qubit_gate(SingleQubitKind kind,
                              const CouplingParams& params) {
  switch (kind) {
    case SingleQubitKind::U1:
      return u1_gate(kPi * params.alpha / 2.0);
    case SingleQubitKind::RYQuarter:
      return ry_gate(kPi / 2.0);
    case SingleQubitKind::RYMinusQuarter:
      return ry_gate(-kPi / 2.0);
    case SingleQubitKind::RZEta:
      return rz_gate(2.0 * params.eta);
    case SingleQubitKind::RZMinus2Eta:
      return rz_gate(-2.0 * params.eta);
  }
  throw std::invalid_argument("single_qubit_gate: unknown kind");
}

QuantumCircuit build_decomposition_circuit(const CouplingParams& params) {
  const double lambda = kPi * params.alpha / 2.0;
  QuantumCircuit circuit(2);
  circuit.append(cnot_gate(), {1, 0}, "cx");
  circuit.append(ry_gate(-kPi / 2.0), {1}, "ry", {-kPi / 2.0});
  circuit.append(cnot_gate(), {0, 1}, "cx");
  circuit.append(u1_gate(-lambda), {1}, "u1", {-lambda});
  circuit.append(cnot_gate(), {0, 1}, "cx");
  circuit.append(u1_gate(lambda), {0}, "u1", {lambda});
  circuit.append(u1_gate(lambda), {1}, "u1", {lambda});
  circuit.append(ry_gate(kPi / 2.0), {1}, "ry", {kPi / 2.0});
  circuit.append(cnot_gate(), {1, 0}, "cx");
  return circuit;
}

void apply_gate_inplace(Matrix& state, const UnitaryGate& gate,
                        const std::vector<int>& wires, int num_qubits) {
  if (num_qubits < 1 ||
      (Eigen::Index(1) << num_qubits) > kMaxDenseDim) {
    throw std::invalid_argument("apply_gate_inplace: register size out of range");
  }
  validate_wires(wires, gate.arity(), num_qubits);
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  if (state.rows() != dim) {
    throw std::invalid_argument(
        "apply_gate_inplace: state row count does not match the register");
  }
  const WirePlacement placement = place_on_wires(wires, num_qubits);
  const std::size_t block = placement.offsets.size();
  const Matrix& g = gate.mat();
  std::vector<Complex> scratch(block);
  for (Eigen::Index col = 0; col < state.cols(); ++col) {
    for (Eigen::Index base = 0; base < dim; ++base) {
      if ((base & placement.mask) != 0) continue;
      for (std::size_t s = 0; s < block; ++s) {
        scratch[s] = state(base + placement.offsets[s], col);
      }
      for (std::size_t s = 0; s < block; ++s) {
        Complex acc = 0.0;
        for (std::size_t t = 0; t < block; ++t) {
          acc += g(s, t) * scratch[t];
        }
        state(base + placement.offsets[s], col) = acc;
      }
    }
  }
}

void conjugate_gate_inplace(Matrix& rho, const UnitaryGate& gate,
                            const std::vector<int>& wires, int num_qubits) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("conjugate_gate_inplace: matrix must be square");
  }
  apply_gate_inplace(rho, gate, wires, num_qubits);

  // Right-multiply by the adjoint: mix columns with conj(g).
  const Eigen::Index dim = rho.rows();
  const WirePlacement placement = place_on_wires(wires, num_qubits);
  const std::size_t block = placement.offsets.size();
  const Matrix& g = gate.mat();
  std::vector<Complex> scratch(block);
  for (Eigen::Index row = 0; row < dim; ++row) {
    for (Eigen::Index base = 0; base < dim; ++base) {
      if ((base & placement.mask) != 0) continue;
      for (std::size_t t = 0; t < block; ++t) {
        scratch[t] = rho(row, base + placement.offsets[t]);
      }
      for (std::size_t s = 0; s < block; ++s) {
        Complex acc = 0.0;
        for (std::size_t t = 0; t < block; ++t) {
          acc += scratch[t] * std::conj(g(s, t));
        }
        rho(row, base + placement.offsets[s]) = acc;
      }
    }
  }
}

Matrix embed_gate(const UnitaryGate& gate, const std::vector<int>& wires,
                  int num_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  Matrix out = Matrix::Identity(dim, dim);
  apply_gate_inplace(out, gate, wires, num_qubits);
  return out;
}

UnitaryGate compile_circuit(const QuantumCircuit& circuit) {
  if (circuit.num_qubits() > 14) {
    throw std::invalid_argument(
        "compile_circuit: register exceeds the dense-size cap");
  }
  const Eigen::Index dim = Eigen::Index(1) << circuit.num_qubits();
  Matrix unitary = Matrix::Identity(dim, dim);
  for (const GateOp& op : circuit.ops()) {
    apply_gate_inplace(unitary, op.gate, op.wires, circuit.num_qubits());
  }
  return UnitaryGate(std::move(unitary));
}

double distance_up_to_global_phase(const UnitaryGate& a, const UnitaryGate& b,
                                   bool* phase_undefined) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(
        "distance_up_to_global_phase: dimension mismatch");
  }
  const Complex inner = (a.mat().adjoint() * b.mat()).trace();
  const bool undefined =
      std::abs(inner) < 1e-14 * static_cast<double>(a.dim());
  if (phase_undefined != nullptr) {
    *phase_undefined = undefined;
  }
  // Evaluating the residual at the optimal phase conj(inner)/|inner| avoids
  // the cancellation the expanded form sqrt(|a|^2 + |b|^2 - 2|tr|) incurs
  // when the gates agree to machine precision.  When the trace vanishes every
  // phase is optimal, so theta = 0 serves.
  const Complex phase = undefined ? Complex(1.0, 0.0)
                                  : std::conj(inner) / std::abs(inner);
  return (a.mat() - phase * b.mat()).norm();
}

}  // namespace homog
