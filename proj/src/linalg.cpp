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

#include "homog/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>

namespace homog {

SubsystemShape::SubsystemShape(std::vector<Eigen::Index> factor_dims)
    : dims(std::move(factor_dims)) {
  if (dims.empty()) {
    throw std::invalid_argument("SubsystemShape: factor list must be non-empty");
  }
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) {
    if (d < 2) {
      throw std::invalid_argument(
          "SubsystemShape: every factor dimension must be at least 2");
    }
    if (total > kMaxDenseDim / d) {
      throw std::invalid_argument(
          "SubsystemShape: total dimension exceeds the dense-size cap");
    }
    total *= d;
  }
}

SubsystemShape SubsystemShape::qubits(int count) {
  if (count < 1) {
    throw std::invalid_argument("SubsystemShape::qubits: count must be >= 1");
  }
  return SubsystemShape(std::vector<Eigen::Index>(count, 2));
}

Eigen::Index SubsystemShape::total_dim() const {
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) total *= d;
  return total;
}

namespace {

// Enumerates, in lexicographic digit order, the flat index offsets spanned by
// the factors at `positions`, where factor i contributes stride[i] per digit.
std::vector<Eigen::Index> factor_offsets(const std::vector<Eigen::Index>& dims,
                                         const std::vector<Eigen::Index>& stride,
                                         const std::vector<int>& positions) {
  std::vector<Eigen::Index> offsets{0};
  for (int p : positions) {
    std::vector<Eigen::Index> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(dims[p]));
    for (Eigen::Index base : offsets) {
      for (Eigen::Index digit = 0; digit < dims[p]; ++digit) {
        next.push_back(base + digit * stride[p]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const SubsystemShape& shape,
                     const std::vector<int>& keep) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("partial_trace: matrix must be square");
  }
  if (shape.total_dim() != m.rows()) {
    throw std::invalid_argument(
        "partial_trace: shape is inconsistent with the matrix dimension");
  }
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set must be non-empty");
  }
  const int factors = shape.num_factors();
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= factors) {
      throw std::invalid_argument("partial_trace: keep index out of range");
    }
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw std::invalid_argument(
          "partial_trace: keep indices must be strictly increasing");
    }
  }

  std::vector<Eigen::Index> stride(factors);
  stride[factors - 1] = 1;
  for (int i = factors - 2; i >= 0; --i) {
    stride[i] = stride[i + 1] * shape.dims[i + 1];
  }

  std::vector<int> traced;
  traced.reserve(factors - keep.size());
  for (int i = 0, k = 0; i < factors; ++i) {
    if (k < static_cast<int>(keep.size()) && keep[k] == i) {
      ++k;
    } else {
      traced.push_back(i);
    }
  }

  const std::vector<Eigen::Index> kept_off =
      factor_offsets(shape.dims, stride, keep);
  const std::vector<Eigen::Index> traced_off =
      factor_offsets(shape.dims, stride, traced);

  const auto out_dim = static_cast<Eigen::Index>(kept_off.size());
  Matrix out(out_dim, out_dim);
  for (Eigen::Index a = 0; a < out_dim; ++a) {
    for (Eigen::Index b = 0; b < out_dim; ++b) {
      Complex sum = 0.0;
      for (Eigen::Index t : traced_off) {
        sum += m(kept_off[a] + t, kept_off[b] + t);
      }
      out(a, b) = sum;
    }
  }
  return out;
}

double hermiticity_error(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermiticity_error: matrix must be square");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix matrix_sqrt_psd(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix_sqrt_psd: matrix must be square");
  }
  if (hermiticity_error(m) > kHermitianTol) {
    throw numerical_error("matrix_sqrt_psd: input is not Hermitian within tolerance");
  }
  const Matrix symmetrized = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("matrix_sqrt_psd: eigendecomposition failed");
  }
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  if (eigenvalues.minCoeff() < -kHermitianTol) {
    throw numerical_error(
        "matrix_sqrt_psd: input has a negative eigenvalue beyond tolerance");
  }
  const Eigen::VectorXd roots = eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() *
         roots.cast<Complex>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) {
    throw std::invalid_argument("trace_norm: matrix must be non-empty");
  }
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("trace_norm: matrix must be square");
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace homog
