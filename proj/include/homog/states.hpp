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

#include "homog/linalg.hpp"

namespace homog {

/**
 * A validated quantum state: Hermitian, unit-trace, positive semidefinite
 * (all within kHermitianTol), together with the tensor factorization of the
 * space it lives on.
 */
class DensityMatrix {
 public:
  /**
   * @throws std::invalid_argument if the matrix is not square or the shape
   *   does not match its dimension.
   * @throws numerical_error if hermiticity, unit trace, or positivity fails
   *   beyond kHermitianTol.
   */
  DensityMatrix(Matrix mat, SubsystemShape shape);

  /** Single-factor shape of the full dimension. */
  explicit DensityMatrix(Matrix mat);

  const Matrix& mat() const { return mat_; }
  const SubsystemShape& shape() const { return shape_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
  SubsystemShape shape_;
};

/**
 * Rank-one projector |psi><psi| of the (normalized) amplitude vector, as a
 * single-factor state.
 *
 * @throws std::invalid_argument if the vector is empty, shorter than 2
 *   entries, or numerically zero.
 */
DensityMatrix pure_state(const Vector& amplitudes);

/** As above, with an explicit tensor factorization for the projector. */
DensityMatrix pure_state(const Vector& amplitudes, SubsystemShape shape);

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/**
 * One of the four maximally entangled two-qubit basis states:
 * |Phi+-> = (|00> +- |11>)/sqrt(2), |Psi+-> = (|01> +- |10>)/sqrt(2).
 */
DensityMatrix bell_state(BellState which);

/**
 * Qubit state (I + x X + y Y + z Z)/2 for a Bloch vector of norm <= 1.
 *
 * @throws std::invalid_argument if the Bloch norm exceeds 1 beyond
 *   kHermitianTol.
 */
DensityMatrix bloch_state(double x, double y, double z);

/** Frobenius-norm distance sqrt(tr[(a-b)^dag (a-b)]). */
double hilbert_schmidt_distance(const DensityMatrix& a, const DensityMatrix& b);

/** Half the trace norm of the difference; lies in [0, 1]. */
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/**
 * Squared-overlap fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2 in [0, 1];
 * for pure states this is the squared overlap |<psi|phi>|^2.
 */
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/** sqrt(2 - 2 sqrt(fidelity(a, b))); lies in [0, sqrt(2)]. */
double bures_distance(const DensityMatrix& a, const DensityMatrix& b);

/** All four metrics evaluated on one state pair. */
struct StateDistanceReport {
  double hilbert_schmidt = 0.0;
  double trace_distance = 0.0;
  double fidelity = 0.0;
  double bures = 0.0;
};

StateDistanceReport distance_report(const DensityMatrix& a,
                                    const DensityMatrix& b);

}  // namespace homog
