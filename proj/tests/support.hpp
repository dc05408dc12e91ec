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

#include <random>

#include "homog/states.hpp"

namespace homog::test {

/** Max absolute entrywise deviation between two matrices of equal shape. */
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/** Standard complex Gaussian matrix. */
inline Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols,
                              std::mt19937& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = Complex(normal(rng), normal(rng));
    }
  }
  return m;
}

/** Haar-distributed unitary via phase-fixed QR of a Gaussian matrix. */
inline Matrix random_unitary(Eigen::Index dim, std::mt19937& rng) {
  const Matrix g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= std::abs(d) < 1e-14 ? 1.0 : d / std::abs(d);
  }
  return q;
}

/** Normalized random state vector. */
inline Vector random_ket(Eigen::Index dim, std::mt19937& rng) {
  Vector v = random_gaussian(dim, 1, rng).col(0);
  return v / v.norm();
}

/** Full-rank random density matrix (normalized Wishart). */
inline DensityMatrix random_state(Eigen::Index dim, std::mt19937& rng) {
  const Matrix g = random_gaussian(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix((rho + rho.adjoint()) / 2.0,
                       SubsystemShape(std::vector<Eigen::Index>{dim}));
}

/** Random qubit state drawn uniformly from the Bloch ball. */
inline DensityMatrix random_qubit_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  double x, y, z;
  do {
    x = uniform(rng);
    y = uniform(rng);
    z = uniform(rng);
  } while (x * x + y * y + z * z > 1.0);
  return bloch_state(x, y, z);
}

}  // namespace homog::test
