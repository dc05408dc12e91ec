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

#include "homog/channels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "homog/gates.hpp"

namespace homog {

namespace {

constexpr int kDilationRoundCap = 10;

/** Eigenvalues of the reference output below this are treated as zero when
 * the Petz map inverts it on its support. */
constexpr double kPseudoInverseCutoff = 1e-12;

Matrix apply_raw(const KrausChannel& channel, const Matrix& rho) {
  Matrix out = Matrix::Zero(channel.dim_out(), channel.dim_out());
  for (const Matrix& k : channel.kraus_ops()) {
    out += k * rho * k.adjoint();
  }
  return out;
}

double raw_root_fidelity(const Matrix& a, const Matrix& b) {
  const Matrix root_a = matrix_sqrt_psd(a);
  const double value = matrix_sqrt_psd(root_a * b * root_a).trace().real();
  return std::clamp(value, 0.0, 1.0);
}

void require_same_signature(const KrausChannel& a, const KrausChannel& b,
                            const char* where) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops)
    : kraus_ops_(std::move(kraus_ops)) {
  if (kraus_ops_.empty()) {
    throw std::invalid_argument("KrausChannel: need at least one Kraus operator");
  }
  dim_out_ = kraus_ops_.front().rows();
  dim_in_ = kraus_ops_.front().cols();
  if (dim_in_ < 1 || dim_out_ < 1) {
    throw std::invalid_argument("KrausChannel: empty Kraus operator");
  }
  for (const Matrix& k : kraus_ops_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw std::invalid_argument(
          "KrausChannel: Kraus operators must share one shape");
    }
  }
}

double KrausChannel::completeness_residual() const {
  Matrix sum = Matrix::Zero(dim_in_, dim_in_);
  for (const Matrix& k : kraus_ops_) {
    sum += k.adjoint() * k;
  }
  return (sum - Matrix::Identity(dim_in_, dim_in_)).norm();
}

void KrausChannel::require_trace_preserving(double tol) const {
  if (completeness_residual() > tol) {
    throw numerical_error(
        "KrausChannel: Kraus set is not trace-preserving within tolerance");
  }
}

DilationIsometry dilation_from_protocol(const DensityMatrix& reservoir,
                                        double eta, int num_rounds,
                                        EnvironmentSide environment) {
  if (reservoir.dim() != 2) {
    throw std::invalid_argument(
        "dilation_from_protocol: only qubit reservoirs are supported");
  }
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("dilation_from_protocol: eta must be finite");
  }
  if (num_rounds < 0 || num_rounds > kDilationRoundCap) {
    throw std::invalid_argument(
        "dilation_from_protocol: round count outside [0, 10]");
  }

  // The reservoir must be pure; extract its state vector.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(reservoir.mat());
  if (solver.info() != Eigen::Success) {
    throw numerical_error("dilation_from_protocol: eigendecomposition failed");
  }
  if (solver.eigenvalues().maxCoeff() < 1.0 - kHermitianTol) {
    throw std::invalid_argument(
        "dilation_from_protocol: reservoir state must be pure");
  }
  Eigen::Index top = 0;
  solver.eigenvalues().maxCoeff(&top);
  const Vector xi_ket = solver.eigenvectors().col(top);

  const int num_wires = num_rounds + 1;
  const Eigen::Index dim = Eigen::Index(1) << num_wires;
  const Eigen::Index reservoir_dim = Eigen::Index(1) << num_rounds;
  const UnitaryGate collision = partial_swap(eta);

  // Column s of M is U_N ... U_1 (|s> (x) |xi>^(x)N).
  Matrix m(dim, 2);
  for (Eigen::Index s = 0; s < 2; ++s) {
    Matrix column = Matrix::Zero(2, 1);
    column(s, 0) = 1.0;
    for (int k = 0; k < num_rounds; ++k) {
      column = kron(column, xi_ket);
    }
    for (int k = 1; k <= num_rounds; ++k) {
      apply_gate_inplace(column, collision, {0, k}, num_wires);
    }
    m.col(s) = column;
  }

  DilationIsometry result;
  result.dim_system = 2;
  if (environment == EnvironmentSide::SystemWire) {
    // Rotate the factors (S, R_1..R_N) -> (R_1..R_N, S) so the system wire
    // becomes the trailing environment factor.
    Matrix permuted(dim, 2);
    for (Eigen::Index row = 0; row < dim; ++row) {
      const Eigen::Index system_bit = (row >> num_rounds) & 1;
      const Eigen::Index reservoir_bits = row & (reservoir_dim - 1);
      permuted.row((reservoir_bits << 1) | system_bit) = m.row(row);
    }
    result.mat = std::move(permuted);
    result.dim_code = reservoir_dim;
    result.dim_env = 2;
  } else {
    result.mat = std::move(m);
    result.dim_code = 2;
    result.dim_env = reservoir_dim;
  }

  const Matrix gram = result.mat.adjoint() * result.mat;
  if ((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw numerical_error("dilation_from_protocol: result is not an isometry");
  }
  return result;
}

namespace {

void require_valid_isometry(const DilationIsometry& m, const char* where) {
  if (m.dim_system < 1 || m.dim_code < 1 || m.dim_env < 1 ||
      m.mat.rows() != m.dim_code * m.dim_env || m.mat.cols() != m.dim_system) {
    throw std::invalid_argument(std::string(where) +
                                ": malformed dilation isometry");
  }
}

// Kraus slice K_i = (I_R (x) <i|_E) M of the dilation.
Matrix environment_slice(const DilationIsometry& m, Eigen::Index i) {
  Matrix k(m.dim_code, m.dim_system);
  for (Eigen::Index r = 0; r < m.dim_code; ++r) {
    k.row(r) = m.mat.row(r * m.dim_env + i);
  }
  return k;
}

}  // namespace

KrausChannel channel_from_dilation(const DilationIsometry& m) {
  require_valid_isometry(m, "channel_from_dilation");
  std::vector<Matrix> ops;
  ops.reserve(m.dim_env);
  for (Eigen::Index i = 0; i < m.dim_env; ++i) {
    ops.push_back(environment_slice(m, i));
  }
  KrausChannel channel(std::move(ops));
  channel.require_trace_preserving();
  return channel;
}

KrausChannel complementary_channel(const DilationIsometry& m) {
  require_valid_isometry(m, "complementary_channel");
  std::vector<Matrix> ops;
  ops.reserve(m.dim_code);
  for (Eigen::Index r = 0; r < m.dim_code; ++r) {
    ops.push_back(m.mat.block(r * m.dim_env, 0, m.dim_env, m.dim_system));
  }
  KrausChannel channel(std::move(ops));
  channel.require_trace_preserving();
  return channel;
}

DensityMatrix apply_channel(const KrausChannel& channel,
                            const DensityMatrix& rho) {
  if (rho.dim() != channel.dim_in()) {
    throw std::invalid_argument("apply_channel: dimension mismatch");
  }
  if (channel.dim_out() < 2) {
    throw std::invalid_argument("apply_channel: channel output space is trivial");
  }
  const Matrix out = apply_raw(channel, rho.mat());
  return DensityMatrix((out + out.adjoint()) / 2.0,
                       SubsystemShape(std::vector<Eigen::Index>{channel.dim_out()}));
}

KrausChannel identity_channel(Eigen::Index dim) {
  if (dim < 2) {
    throw std::invalid_argument("identity_channel: dimension must be >= 2");
  }
  return KrausChannel({Matrix::Identity(dim, dim)});
}

KrausChannel constant_channel(const DensityMatrix& sigma, Eigen::Index dim_in) {
  if (dim_in < 2) {
    throw std::invalid_argument("constant_channel: input dimension must be >= 2");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sigma.mat());
  if (solver.info() != Eigen::Success) {
    throw numerical_error("constant_channel: eigendecomposition failed");
  }
  std::vector<Matrix> ops;
  for (Eigen::Index j = 0; j < sigma.dim(); ++j) {
    const double weight = std::max(0.0, solver.eigenvalues()(j));
    if (weight < 1e-15) continue;
    const Vector mode = std::sqrt(weight) * solver.eigenvectors().col(j);
    for (Eigen::Index i = 0; i < dim_in; ++i) {
      Matrix k = Matrix::Zero(sigma.dim(), dim_in);
      k.col(i) = mode;
      ops.push_back(std::move(k));
    }
  }
  KrausChannel channel(std::move(ops));
  channel.require_trace_preserving();
  return channel;
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (inner.dim_out() != outer.dim_in()) {
    throw std::invalid_argument("compose: intermediate dimension mismatch");
  }
  std::vector<Matrix> ops;
  ops.reserve(outer.kraus_ops().size() * inner.kraus_ops().size());
  for (const Matrix& o : outer.kraus_ops()) {
    for (const Matrix& i : inner.kraus_ops()) {
      ops.push_back(o * i);
    }
  }
  return KrausChannel(std::move(ops));
}

std::vector<Matrix> default_noise_basis(const DilationIsometry& m) {
  require_valid_isometry(m, "default_noise_basis");
  const Eigen::Index dim = m.dim_code * m.dim_env;
  std::vector<Matrix> basis;
  basis.reserve(m.dim_env);
  for (Eigen::Index i = 0; i < m.dim_env; ++i) {
    Matrix n = Matrix::Zero(dim, dim);
    for (Eigen::Index r = 0; r < m.dim_code; ++r) {
      n(r * m.dim_env + 0, r * m.dim_env + i) = 1.0;
    }
    basis.push_back(std::move(n));
  }
  return basis;
}

namespace {

double kl_residual_from_blocks(const std::vector<Matrix>& blocks,
                               Eigen::Index dim_system) {
  double total = 0.0;
  const Matrix identity = Matrix::Identity(dim_system, dim_system);
  for (const Matrix& a : blocks) {
    const Complex lambda = a.trace() / static_cast<double>(dim_system);
    total += (a - lambda * identity).squaredNorm();
  }
  return std::sqrt(total);
}

}  // namespace

double kl_residual(const DilationIsometry& m,
                   const std::vector<Matrix>& noise_basis) {
  require_valid_isometry(m, "kl_residual");
  if (noise_basis.empty()) {
    throw std::invalid_argument("kl_residual: noise basis must be non-empty");
  }
  const Eigen::Index dim = m.dim_code * m.dim_env;
  std::vector<Matrix> blocks;
  blocks.reserve(noise_basis.size() * noise_basis.size());
  for (const Matrix& ni : noise_basis) {
    if (ni.rows() != dim || ni.cols() != dim) {
      throw std::invalid_argument(
          "kl_residual: noise element dimension mismatch");
    }
    const Matrix ni_m = ni * m.mat;
    for (const Matrix& nj : noise_basis) {
      blocks.push_back(ni_m.adjoint() * (nj * m.mat));
    }
  }
  return kl_residual_from_blocks(blocks, m.dim_system);
}

double kl_residual(const DilationIsometry& m) {
  require_valid_isometry(m, "kl_residual");
  // For the default noise basis N_i = I_R (x) |0><i|_E the blocks reduce to
  // K_i^dag K_j over the environment-basis Kraus slices.
  std::vector<Matrix> slices;
  slices.reserve(m.dim_env);
  for (Eigen::Index i = 0; i < m.dim_env; ++i) {
    slices.push_back(environment_slice(m, i));
  }
  std::vector<Matrix> blocks;
  blocks.reserve(slices.size() * slices.size());
  for (const Matrix& ki : slices) {
    for (const Matrix& kj : slices) {
      blocks.push_back(ki.adjoint() * kj);
    }
  }
  return kl_residual_from_blocks(blocks, m.dim_system);
}

double forgetfulness_probe(const KrausChannel& channel,
                           const std::vector<DensityMatrix>& probes) {
  if (probes.empty()) {
    throw std::invalid_argument("forgetfulness_probe: probe set must be non-empty");
  }
  std::vector<Matrix> outputs;
  outputs.reserve(probes.size());
  Matrix average = Matrix::Zero(channel.dim_out(), channel.dim_out());
  for (const DensityMatrix& probe : probes) {
    if (probe.dim() != channel.dim_in()) {
      throw std::invalid_argument("forgetfulness_probe: probe dimension mismatch");
    }
    outputs.push_back(apply_raw(channel, probe.mat()));
    average += outputs.back();
  }
  average /= static_cast<double>(probes.size());
  double worst = 0.0;
  for (const Matrix& out : outputs) {
    worst = std::max(worst, trace_norm(out - average));
  }
  return worst;
}

KrausChannel petz_recovery(const KrausChannel& channel,
                           const DensityMatrix& reference) {
  if (reference.dim() != channel.dim_in()) {
    throw std::invalid_argument("petz_recovery: reference dimension mismatch");
  }
  const Matrix root_ref = matrix_sqrt_psd(reference.mat());
  const Matrix ref_out = apply_raw(channel, reference.mat());
  Eigen::SelfAdjointEigenSolver<Matrix> solver((ref_out + ref_out.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("petz_recovery: eigendecomposition failed");
  }
  Eigen::VectorXd inv_roots = solver.eigenvalues();
  for (Eigen::Index i = 0; i < inv_roots.size(); ++i) {
    inv_roots(i) =
        inv_roots(i) > kPseudoInverseCutoff ? 1.0 / std::sqrt(inv_roots(i)) : 0.0;
  }
  const Matrix inv_root_out = solver.eigenvectors() *
                              inv_roots.cast<Complex>().asDiagonal() *
                              solver.eigenvectors().adjoint();
  std::vector<Matrix> ops;
  ops.reserve(channel.kraus_ops().size());
  for (const Matrix& k : channel.kraus_ops()) {
    ops.push_back(root_ref * k.adjoint() * inv_root_out);
  }
  return KrausChannel(std::move(ops));
}

Matrix choi_matrix(const KrausChannel& channel) {
  const Eigen::Index din = channel.dim_in();
  const Eigen::Index dout = channel.dim_out();
  Matrix choi = Matrix::Zero(din * dout, din * dout);
  for (const Matrix& k : channel.kraus_ops()) {
    Vector vec(din * dout);
    for (Eigen::Index j = 0; j < din; ++j) {
      vec.segment(j * dout, dout) = k.col(j);
    }
    choi += vec * vec.adjoint();
  }
  return choi;
}

double channel_fidelity(const KrausChannel& a, const KrausChannel& b) {
  require_same_signature(a, b, "channel_fidelity");
  const double din = static_cast<double>(a.dim_in());
  const double root =
      raw_root_fidelity(choi_matrix(a) / din, choi_matrix(b) / din);
  return root * root;
}

double channel_bures_distance(const KrausChannel& a, const KrausChannel& b) {
  require_same_signature(a, b, "channel_bures_distance");
  const double din = static_cast<double>(a.dim_in());
  const double root =
      raw_root_fidelity(choi_matrix(a) / din, choi_matrix(b) / din);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * root));
}

std::pair<double, double> diamond_distance_bounds(const KrausChannel& a,
                                                  const KrausChannel& b) {
  require_same_signature(a, b, "diamond_distance_bounds");
  const double norm = trace_norm(choi_matrix(a) - choi_matrix(b));
  return {norm / static_cast<double>(a.dim_in()), norm};
}

std::vector<DensityMatrix> default_probe_states() {
  return {bloch_state(0.0, 0.0, 1.0), bloch_state(0.0, 0.0, -1.0),
          bloch_state(1.0, 0.0, 0.0), bloch_state(0.0, 1.0, 0.0)};
}

CorrectabilityReport correctability_report(
    double eta, int num_rounds, const DensityMatrix& reservoir,
    const std::vector<DensityMatrix>& probes) {
  if (probes.empty()) {
    throw std::invalid_argument("correctability_report: probe set must be non-empty");
  }
  const DilationIsometry m = dilation_from_protocol(
      reservoir, eta, num_rounds, EnvironmentSide::SystemWire);
  const KrausChannel zeta = channel_from_dilation(m);
  const KrausChannel zeta_hat = complementary_channel(m);

  CorrectabilityReport report;
  report.env_dim = static_cast<int>(m.dim_env);
  report.kl_residual = kl_residual(m);
  report.forgetfulness = forgetfulness_probe(zeta_hat, probes);
  report.delta_bound = 2.0 * std::sqrt(2.0 * report.forgetfulness);

  const Eigen::Index dim_system = m.dim_system;
  const DensityMatrix reference(
      Matrix::Identity(dim_system, dim_system) / static_cast<double>(dim_system),
      SubsystemShape(std::vector<Eigen::Index>{dim_system}));
  const KrausChannel recovery = petz_recovery(zeta, reference);
  const KrausChannel round_trip = compose(recovery, zeta);
  const KrausChannel target = identity_channel(dim_system);

  const double root = std::sqrt(
      std::min(1.0, channel_fidelity(round_trip, target)));
  report.recovery_fidelity = root * root;
  report.bures_to_identity = std::sqrt(std::max(0.0, 2.0 - 2.0 * root));
  const auto bounds = diamond_distance_bounds(round_trip, target);
  report.diamond_lower = bounds.first;
  report.diamond_upper = bounds.second;

  double deviation = 0.0;
  for (const DensityMatrix& probe : probes) {
    const Matrix out = apply_raw(round_trip, probe.mat());
    deviation = std::max(deviation, 0.5 * trace_norm(out - reservoir.mat()));
  }
  report.reservoir_deviation = deviation;
  return report;
}

}  // namespace homog
