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

#include <utility>
#include <vector>

#include "homog/states.hpp"

namespace homog {

/**
 * A quantum channel in Kraus form, rho -> sum_i K_i rho K_i^dag.  The
 * constructor validates only structural consistency; call
 * require_trace_preserving() to assert completeness (the Petz recovery map
 * is trace-preserving only on the support of its reference output, so
 * sub-normalized Kraus sets are representable).
 */
class KrausChannel {
 public:
  /**
   * @throws std::invalid_argument if the list is empty or the operators do
   *   not share a common shape.
   */
  explicit KrausChannel(std::vector<Matrix> kraus_ops);

  const std::vector<Matrix>& kraus_ops() const { return kraus_ops_; }
  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }

  /** Frobenius norm of sum_i K_i^dag K_i - I. */
  double completeness_residual() const;

  /** @throws numerical_error if the completeness residual exceeds tol. */
  void require_trace_preserving(double tol = kHermitianTol) const;

 private:
  std::vector<Matrix> kraus_ops_;
  Eigen::Index dim_in_ = 0;
  Eigen::Index dim_out_ = 0;
};

/**
 * An isometry M : H_S -> H_R (x) H_E (code factor first, environment factor
 * last), with dim_code * dim_env rows and dim_system columns.
 */
struct DilationIsometry {
  Matrix mat;
  Eigen::Index dim_system = 0;
  Eigen::Index dim_code = 0;
  Eigen::Index dim_env = 0;
};

/**
 * Which tensor factor of the final joint state plays the environment in the
 * dilation of the homogenization protocol.  SystemWire (the default) makes
 * the N reservoir wires the code space R and the outgoing system wire the
 * environment E; ReservoirWires is the mirrored split.
 */
enum class EnvironmentSide { SystemWire, ReservoirWires };

/**
 * Stinespring dilation of an N-round homogenization: the isometry
 * |psi> -> U_N ... U_1 (|psi> (x) |xi>^(x)N), with the factors reordered so
 * the designated environment comes last.
 *
 * @throws std::invalid_argument if the reservoir state is mixed (rank > 1
 *   beyond kHermitianTol), num_rounds < 0, or the register exceeds the cap.
 */
DilationIsometry dilation_from_protocol(
    const DensityMatrix& reservoir, double eta, int num_rounds,
    EnvironmentSide environment = EnvironmentSide::SystemWire);

/**
 * The channel rho -> tr_E(M rho M^dag) with Kraus operators
 * K_i = (I_R (x) <i|_E) M over the computational environment basis.
 */
KrausChannel channel_from_dilation(const DilationIsometry& m);

/**
 * The complementary channel rho -> tr_R(M rho M^dag) with Kraus operators
 * indexed by the computational basis of the code factor R.
 */
KrausChannel complementary_channel(const DilationIsometry& m);

/**
 * @throws std::invalid_argument on dimension mismatch or when the channel
 *   output space is trivial (dimension below 2).
 * @throws numerical_error if the output violates state invariants (only
 *   possible for non-trace-preserving Kraus sets).
 */
DensityMatrix apply_channel(const KrausChannel& channel,
                            const DensityMatrix& rho);

/** The identity channel on a dim-dimensional space. */
KrausChannel identity_channel(Eigen::Index dim);

/** The channel mapping every dim_in-dimensional input to `sigma`. */
KrausChannel constant_channel(const DensityMatrix& sigma, Eigen::Index dim_in);

/** Composition outer . inner (inner acts first). */
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

/**
 * The noise elements whose correctability the Knill-Laflamme residual tests
 * by default: N_i = I_R (x) |0><i|_E on the dilation's output space, so that
 * M^dag N_i^dag N_j M reduces to K_i^dag K_j for the environment-basis Kraus
 * slices K_i of the channel.
 */
std::vector<Matrix> default_noise_basis(const DilationIsometry& m);

/**
 * Knill-Laflamme residual of the noise set {N_i} on the dilation: with
 * A_ij = M^dag N_i^dag N_j M and lambda_ij = tr(A_ij) / dim_system (the
 * least-squares multiple of the identity), returns the Frobenius norm of the
 * full residual block matrix, sqrt(sum_ij ||A_ij - lambda_ij I||_F^2).
 *
 * This aggregate depends only on the span of {N_i}: rotating the noise basis
 * by a unitary mixes the blocks A_ij by conjugation of the block matrix,
 * which Frobenius norms ignore.  (A per-block maximum would not be
 * basis-invariant.)  The residual is 0 exactly when every A_ij is a multiple
 * of the identity, i.e. when the noise set is exactly correctable.
 *
 * @throws std::invalid_argument on empty basis or dimension mismatch.
 */
double kl_residual(const DilationIsometry& m,
                   const std::vector<Matrix>& noise_basis);

/** kl_residual with the default environment-slice noise basis. */
double kl_residual(const DilationIsometry& m);

/**
 * Constant-output ("forgetfulness") witness of a channel: with sigma the
 * average output over the probe states, returns
 * max_p || channel(rho_p) - sigma ||_1 (the full trace norm, not halved, so
 * the identity channel probed with |0><0|, |1><1| scores 1).  A channel is
 * nearly forgetful (nearly constant) when this is small.
 *
 * @throws std::invalid_argument on an empty probe set or dimension mismatch.
 */
double forgetfulness_probe(const KrausChannel& channel,
                           const std::vector<DensityMatrix>& probes);

/**
 * The Petz (transpose) recovery map of `channel` with respect to the
 * reference state: R(X) = ref^{1/2} sum_i K_i^dag C^{-1/2} X C^{-1/2} K_i
 * ref^{1/2} with C = channel(ref), using the pseudoinverse on the support of
 * C (eigenvalues below 1e-12 are dropped).  Trace-preserving on the support
 * of C; check completeness_residual() when C is rank-deficient.
 *
 * @throws std::invalid_argument on reference dimension mismatch.
 */
KrausChannel petz_recovery(const KrausChannel& channel,
                           const DensityMatrix& reference);

/**
 * Unnormalized Choi matrix J(Phi) = sum_ij E_ij (x) Phi(E_ij), with the
 * input factor first; tr J = dim_in and J is PSD.
 */
Matrix choi_matrix(const KrausChannel& channel);

/**
 * Fidelity between the channels' normalized Choi states (squared-overlap
 * convention, matching the state metric); 1 exactly when the channels are
 * equal.
 *
 * @throws std::invalid_argument on dimension mismatch.
 */
double channel_fidelity(const KrausChannel& a, const KrausChannel& b);

/** Bures distance sqrt(2 - 2 sqrt(channel_fidelity)) between Choi states. */
double channel_bures_distance(const KrausChannel& a, const KrausChannel& b);

/**
 * (lower, upper) bounds on the diamond distance between two channels:
 * lower = ||J(a) - J(b)||_1 / dim_in, upper = ||J(a) - J(b)||_1.  The true
 * diamond distance lies in [lower, upper].
 */
std::pair<double, double> diamond_distance_bounds(const KrausChannel& a,
                                                  const KrausChannel& b);

/**
 * Joint correctability diagnostics of the N-round homogenization with
 * encoding channel zeta (system -> reservoir wires) and complementary
 * channel zeta_hat (system -> environment wire):
 *
 *  - kl_residual: Knill-Laflamme residual of the default noise basis;
 *  - forgetfulness: constant-output witness of zeta_hat over the probes;
 *  - recovery_fidelity: Choi fidelity of (Petz recovery . zeta) against the
 *    identity target;
 *  - diamond_lower/upper: diamond-distance bounds of the same pair;
 *  - delta_bound: 2 sqrt(2 * forgetfulness), the recovery-precision bound
 *    implied by the information-disturbance tradeoff;
 *  - bures_to_identity: channel-Bures distance of (recovery . zeta) from the
 *    identity (the quantity the delta_bound caps);
 *  - reservoir_deviation: max over probes of the trace distance between
 *    (recovery . zeta)(rho_p) and the reservoir state, the alternative
 *    constant-target reading of the recovery error;
 *  - env_dim: the environment dimension k (always 2 for qubit collisions).
 */
struct CorrectabilityReport {
  double kl_residual = 0.0;
  double forgetfulness = 0.0;
  double recovery_fidelity = 0.0;
  double diamond_lower = 0.0;
  double diamond_upper = 0.0;
  double delta_bound = 0.0;
  double bures_to_identity = 0.0;
  double reservoir_deviation = 0.0;
  int env_dim = 2;
};

/** The default probe set {|0>, |1>, |+>, |i>}. */
std::vector<DensityMatrix> default_probe_states();

/**
 * Assembles the full report for one (eta, N) point.
 *
 * @throws std::invalid_argument propagated from the dilation builder (mixed
 *   reservoir, cap violations) or on an empty probe set.
 */
CorrectabilityReport correctability_report(
    double eta, int num_rounds, const DensityMatrix& reservoir,
    const std::vector<DensityMatrix>& probes);

}  // namespace homog
