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

#include "homog/states.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace homog {

namespace {

void validate_density(const Matrix& mat, const SubsystemShape& shape) {
  if (mat.rows() != mat.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
  if (mat.rows() < 2) {
    throw std::invalid_argument("DensityMatrix: dimension must be at least 2");
  }
  if (shape.total_dim() != mat.rows()) {
    throw std::invalid_argument(
        "DensityMatrix: shape does not match the matrix dimension");
  }
  if (hermiticity_error(mat) > kHermitianTol) {
    throw numerical_error("DensityMatrix: matrix is not Hermitian within tolerance");
  }
  if (std::abs(mat.trace() - Complex(1.0, 0.0)) > kHermitianTol) {
    throw numerical_error("DensityMatrix: trace differs from 1 beyond tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver((mat + mat.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("DensityMatrix: eigendecomposition failed");
  }
  if (solver.eigenvalues().minCoeff() < -kHermitianTol) {
    throw numerical_error(
        "DensityMatrix: matrix has a negative eigenvalue beyond tolerance");
  }
}

void require_equal_dims(const DensityMatrix& a, const DensityMatrix& b,
                        const char* where) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

// Trace of the PSD root of sqrt(a) b sqrt(a), clamped into [0, 1] against
// round-off so downstream square roots stay real.
double root_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  const Matrix root_a = matrix_sqrt_psd(a.mat());
  const Matrix inner = root_a * b.mat() * root_a;
  const double value = matrix_sqrt_psd(inner).trace().real();
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix mat, SubsystemShape shape)
    : mat_(std::move(mat)), shape_(std::move(shape)) {
  validate_density(mat_, shape_);
}

DensityMatrix::DensityMatrix(Matrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() < 2) {
    throw std::invalid_argument("DensityMatrix: dimension must be at least 2");
  }
  shape_ = SubsystemShape(std::vector<Eigen::Index>{mat_.rows()});
  validate_density(mat_, shape_);
}

DensityMatrix pure_state(const Vector& amplitudes, SubsystemShape shape) {
  if (amplitudes.size() < 2) {
    throw std::invalid_argument("pure_state: need at least 2 amplitudes");
  }
  const double norm = amplitudes.norm();
  if (norm < 1e-12) {
    throw std::invalid_argument("pure_state: amplitude vector is numerically zero");
  }
  const Vector normalized = amplitudes / norm;
  return DensityMatrix(normalized * normalized.adjoint(), std::move(shape));
}

DensityMatrix pure_state(const Vector& amplitudes) {
  if (amplitudes.size() < 2) {
    throw std::invalid_argument("pure_state: need at least 2 amplitudes");
  }
  return pure_state(amplitudes,
                    SubsystemShape(std::vector<Eigen::Index>{amplitudes.size()}));
}

DensityMatrix bell_state(BellState which) {
  Vector amplitudes = Vector::Zero(4);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (which) {
    case BellState::PhiPlus:
      amplitudes(0) = inv_sqrt2;
      amplitudes(3) = inv_sqrt2;
      break;
    case BellState::PhiMinus:
      amplitudes(0) = inv_sqrt2;
      amplitudes(3) = -inv_sqrt2;
      break;
    case BellState::PsiPlus:
      amplitudes(1) = inv_sqrt2;
      amplitudes(2) = inv_sqrt2;
      break;
    case BellState::PsiMinus:
      amplitudes(1) = inv_sqrt2;
      amplitudes(2) = -inv_sqrt2;
      break;
  }
  return pure_state(amplitudes, SubsystemShape::qubits(2));
}

DensityMatrix bloch_state(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (norm > 1.0 + kHermitianTol) {
    throw std::invalid_argument("bloch_state: Bloch vector norm exceeds 1");
  }
  Matrix mat(2, 2);
  mat << Complex(1.0 + z, 0.0) / 2.0, Complex(x, -y) / 2.0,
         Complex(x, y) / 2.0, Complex(1.0 - z, 0.0) / 2.0;
  return DensityMatrix(std::move(mat), SubsystemShape::qubits(1));
}

double hilbert_schmidt_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_equal_dims(a, b, "hilbert_schmidt_distance");
  return (a.mat() - b.mat()).norm();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_equal_dims(a, b, "trace_distance");
  return 0.5 * trace_norm(a.mat() - b.mat());
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_equal_dims(a, b, "fidelity");
  const double root = root_fidelity(a, b);
  return root * root;
}

double bures_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_equal_dims(a, b, "bures_distance");
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * root_fidelity(a, b)));
}

StateDistanceReport distance_report(const DensityMatrix& a,
                                    const DensityMatrix& b) {
  require_equal_dims(a, b, "distance_report");
  StateDistanceReport report;
  report.hilbert_schmidt = hilbert_schmidt_distance(a, b);
  report.trace_distance = trace_distance(a, b);
  const double root = root_fidelity(a, b);
  report.fidelity = root * root;
  report.bures = std::sqrt(std::max(0.0, 2.0 - 2.0 * root));
  return report;
}

}  // namespace homog
