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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "homog/errors.hpp"

namespace homog {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/**
 * Absolute tolerance for hermiticity and positivity checks.  Eigenvalues in
 * [-kHermitianTol, 0) are treated as round-off and clipped to zero.
 */
inline constexpr double kHermitianTol = 1e-9;

/** Absolute tolerance for unitarity / isometry checks. */
inline constexpr double kUnitaryTol = 1e-10;

/**
 * Largest dense dimension any kernel will produce.  Guards against
 * accidental exponential blow-up when chaining Kronecker products or
 * compiling wide circuits.
 */
inline constexpr Eigen::Index kMaxDenseDim = Eigen::Index(1) << 14;

/**
 * Ordered list of local Hilbert-space dimensions of the tensor factors a
 * matrix lives on.  Factor 0 is the leftmost factor, i.e. the most
 * significant digit of a basis-state index.
 */
struct SubsystemShape {
  std::vector<Eigen::Index> dims;

  SubsystemShape() = default;

  /**
   * @throws std::invalid_argument if the list is empty, any factor dimension
   *   is below 2, or the total dimension exceeds kMaxDenseDim.
   */
  explicit SubsystemShape(std::vector<Eigen::Index> factor_dims);

  /** Shape of @p count qubit factors (all local dimensions equal to 2). */
  static SubsystemShape qubits(int count);

  /** Product of all factor dimensions. */
  Eigen::Index total_dim() const;

  int num_factors() const { return static_cast<int>(dims.size()); }
};

/**
 * Kronecker (tensor) product a (x) b.  Accepts any dense Eigen expressions;
 * both operands are evaluated as complex matrices.
 *
 * @throws std::invalid_argument if either operand is empty or the result
 *   dimension would exceed kMaxDenseDim.
 */
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a_expr,
            const Eigen::MatrixBase<DerivedB>& b_expr) {
  const Matrix a = a_expr.template cast<Complex>();
  const Matrix b = b_expr.template cast<Complex>();
  if (a.size() == 0 || b.size() == 0) {
    throw std::invalid_argument("kron: operands must be non-empty");
  }
  if (a.rows() > kMaxDenseDim / b.rows() || a.cols() > kMaxDenseDim / b.cols()) {
    throw std::invalid_argument(
        "kron: result dimension exceeds the dense-size cap");
  }
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

/**
 * Partial trace of a square matrix over the tensor factors *not* listed in
 * @p keep.  The kept factors retain their original relative order.
 *
 * @param m square matrix on the tensor-product space described by @p shape.
 * @param shape factorization of the space; shape.total_dim() must equal the
 *   dimension of @p m.
 * @param keep strictly increasing, non-empty list of factor indices to
 *   retain.
 * @throws std::invalid_argument on shape mismatch, an empty keep set, or
 *   invalid / unsorted / duplicate indices.
 */
Matrix partial_trace(const Matrix& m, const SubsystemShape& shape,
                     const std::vector<int>& keep);

/**
 * Principal square root of a Hermitian positive-semidefinite matrix.
 * Eigenvalues in [-kHermitianTol, 0) are clipped to zero before the root is
 * formed, so the result is always Hermitian PSD.
 *
 * @throws std::invalid_argument if @p m is not square.
 * @throws numerical_error if @p m deviates from hermiticity by more than
 *   kHermitianTol, or has an eigenvalue below -kHermitianTol.
 */
Matrix matrix_sqrt_psd(const Matrix& m);

/**
 * Trace norm (Schatten 1-norm): the sum of singular values.
 *
 * @throws std::invalid_argument if @p m is empty or not square.
 */
double trace_norm(const Matrix& m);

/** Largest absolute deviation of @p m from its own adjoint. */
double hermiticity_error(const Matrix& m);

}  // namespace homog
