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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "homog/channels.hpp"
#include "homog/protocol.hpp"
#include "support.hpp"

using namespace homog;
using test::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix ket0() { return bloch_state(0.0, 0.0, 1.0); }
DensityMatrix ket1() { return bloch_state(0.0, 0.0, -1.0); }
DensityMatrix maximally_mixed() {
  return DensityMatrix(Matrix::Identity(2, 2) / 2.0);
}

KrausChannel pauli_x_channel() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return KrausChannel({x});
}

}  // namespace

TEST_CASE("KrausChannel structural validation and completeness") {
  CHECK_THROWS_AS(KrausChannel{std::vector<Matrix>{}}, std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel({Matrix::Identity(2, 2), Matrix::Ones(4, 2)}),
                  std::invalid_argument);

  const KrausChannel id = identity_channel(2);
  CHECK(id.completeness_residual() < 1e-15);
  CHECK_NOTHROW(id.require_trace_preserving());

  // A lone X/sqrt(2) is sub-normalized: structurally fine, not TP.
  Matrix half_x(2, 2);
  half_x << 0, 1, 1, 0;
  const KrausChannel leaky(std::vector<Matrix>{half_x / std::sqrt(2.0)});
  CHECK(leaky.completeness_residual() > 0.5);
  CHECK_THROWS_AS(leaky.require_trace_preserving(), numerical_error);
}

TEST_CASE("apply_channel, constant_channel, and compose") {
  std::mt19937 rng(51);
  const DensityMatrix rho = test::random_qubit_state(rng);

  CHECK(max_abs_diff(apply_channel(identity_channel(2), rho).mat(),
                     rho.mat()) < 1e-15);

  const DensityMatrix sigma = test::random_qubit_state(rng);
  const KrausChannel pin = constant_channel(sigma, 2);
  CHECK_NOTHROW(pin.require_trace_preserving());
  CHECK(max_abs_diff(apply_channel(pin, rho).mat(), sigma.mat()) < 1e-13);

  // X then X is the identity.
  const KrausChannel twice = compose(pauli_x_channel(), pauli_x_channel());
  CHECK(max_abs_diff(apply_channel(twice, rho).mat(), rho.mat()) < 1e-14);

  // Composition applies the inner channel first.
  const KrausChannel pin_then_flip = compose(pauli_x_channel(), pin);
  const Matrix x = pauli_x_channel().kraus_ops()[0];
  CHECK(max_abs_diff(apply_channel(pin_then_flip, rho).mat(),
                     x * sigma.mat() * x.adjoint()) < 1e-13);

  CHECK_THROWS_AS(
      (void)apply_channel(identity_channel(4), rho), std::invalid_argument);
}

TEST_CASE("dilation_from_protocol yields an isometry with the right shape") {
  for (int rounds : {0, 1, 2, 3}) {
    for (double eta : {0.0, 0.37, kPi / 3.0, kPi / 2.0}) {
      const DilationIsometry m =
          dilation_from_protocol(ket0(), eta, rounds);
      CHECK(m.dim_system == 2);
      CHECK(m.dim_env == 2);
      CHECK(m.dim_code == (Eigen::Index{1} << rounds));
      CHECK(m.mat.rows() == m.dim_code * m.dim_env);
      CHECK(m.mat.cols() == 2);
      CHECK(max_abs_diff(m.mat.adjoint() * m.mat, Matrix::Identity(2, 2)) <
            1e-12);
    }
  }
  CHECK_THROWS_AS(
      (void)dilation_from_protocol(maximally_mixed(), 0.3, 1),
      std::invalid_argument);
  CHECK_THROWS_AS((void)dilation_from_protocol(ket0(), 0.3, -1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)dilation_from_protocol(ket0(), 0.3, 11),
                  std::invalid_argument);
}

TEST_CASE("full-swap dilation embeds the input on the reservoir wire") {
  // At eta = pi/2 a single collision is i SWAP, so after the reorder the
  // isometry is i (I (x) |0>): the system rides the code wire untouched.
  const DilationIsometry m =
      dilation_from_protocol(ket0(), kPi / 2.0, 1);
  Matrix expected = Matrix::Zero(4, 2);
  expected(0, 0) = Complex(0.0, 1.0);
  expected(2, 1) = Complex(0.0, 1.0);
  CHECK(max_abs_diff(m.mat, expected) < 1e-15);
}

TEST_CASE("channel and complement agree with partial traces of the dilation") {
  std::mt19937 rng(52);
  for (double eta : {0.0, 0.4, kPi / 3.0, kPi / 2.0}) {
    const DilationIsometry m = dilation_from_protocol(ket0(), eta, 2);
    const KrausChannel zeta = channel_from_dilation(m);
    const KrausChannel zeta_hat = complementary_channel(m);
    CHECK_NOTHROW(zeta.require_trace_preserving());
    CHECK_NOTHROW(zeta_hat.require_trace_preserving());
    const SubsystemShape split({m.dim_code, m.dim_env});
    for (int trial = 0; trial < 4; ++trial) {
      const DensityMatrix rho = test::random_qubit_state(rng);
      const Matrix joint = m.mat * rho.mat() * m.mat.adjoint();
      CHECK(max_abs_diff(apply_channel(zeta, rho).mat(),
                         partial_trace(joint, split, {0})) < 1e-12);
      CHECK(max_abs_diff(apply_channel(zeta_hat, rho).mat(),
                         partial_trace(joint, split, {1})) < 1e-12);
    }
  }
}

TEST_CASE("environment sides are mirror images of each other") {
  const double eta = 0.8;
  const DilationIsometry sys_side = dilation_from_protocol(
      ket0(), eta, 2, EnvironmentSide::SystemWire);
  const DilationIsometry res_side = dilation_from_protocol(
      ket0(), eta, 2, EnvironmentSide::ReservoirWires);
  CHECK(res_side.dim_code == 2);
  CHECK(res_side.dim_env == 4);
  const Matrix a = choi_matrix(complementary_channel(sys_side));
  const Matrix b = choi_matrix(channel_from_dilation(res_side));
  CHECK(max_abs_diff(a, b) < 1e-12);
  const Matrix c = choi_matrix(channel_from_dilation(sys_side));
  const Matrix d = choi_matrix(complementary_channel(res_side));
  CHECK(max_abs_diff(c, d) < 1e-12);
}

TEST_CASE("single-round channel matches the collision marginals") {
  std::mt19937 rng(53);
  const double eta = 0.65;
  const DilationIsometry m = dilation_from_protocol(ket0(), eta, 1);
  const KrausChannel zeta = channel_from_dilation(m);
  const KrausChannel zeta_hat = complementary_channel(m);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = test::random_qubit_state(rng);
    const auto [sys_out, anc_out] = collide(rho, ket0(), eta);
    CHECK(max_abs_diff(apply_channel(zeta, rho).mat(), anc_out.mat()) < 1e-12);
    CHECK(max_abs_diff(apply_channel(zeta_hat, rho).mat(), sys_out.mat()) <
          1e-12);
  }
}

TEST_CASE("N = 0 dilation reduces to the bare system wire") {
  const DilationIsometry m = dilation_from_protocol(ket0(), 0.9, 0);
  CHECK(m.dim_code == 1);
  CHECK(m.dim_env == 2);
  CHECK(max_abs_diff(m.mat, Matrix::Identity(2, 2)) < 1e-15);
  // With no reservoir wires the complement carries the input through intact.
  const KrausChannel zeta_hat = complementary_channel(m);
  CHECK(channel_fidelity(zeta_hat, identity_channel(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kl_residual limits and fast path") {
  // Full swap: the noise set is exactly correctable.
  const DilationIsometry clean =
      dilation_from_protocol(ket0(), kPi / 2.0, 1);
  CHECK(kl_residual(clean) < 1e-10);

  // No coupling: the environment keeps a full copy of the input; the
  // residual is maximal, sqrt(3) for one round.
  const DilationIsometry opaque = dilation_from_protocol(ket0(), 0.0, 1);
  CHECK(kl_residual(opaque) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  // The explicit-basis path must reproduce the environment-slice fast path.
  for (double eta : {0.3, kPi / 3.0, 1.2}) {
    for (int rounds : {1, 2, 3}) {
      const DilationIsometry m = dilation_from_protocol(ket0(), eta, rounds);
      CHECK(std::abs(kl_residual(m) - kl_residual(m, default_noise_basis(m))) <
            1e-11);
    }
  }
}

TEST_CASE("kl_residual is invariant under a noise-basis rotation") {
  std::mt19937 rng(54);
  const DilationIsometry m = dilation_from_protocol(ket0(), kPi / 3.0, 2);
  const std::vector<Matrix> basis = default_noise_basis(m);
  const double reference = kl_residual(m, basis);
  for (int trial = 0; trial < 4; ++trial) {
    const Matrix v = test::random_unitary(
        static_cast<Eigen::Index>(basis.size()), rng);
    std::vector<Matrix> rotated(basis.size(),
                                Matrix::Zero(m.mat.rows(), m.mat.rows()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        rotated[i] += v(static_cast<Eigen::Index>(i),
                        static_cast<Eigen::Index>(j)) *
                      basis[j];
      }
    }
    CHECK(std::abs(kl_residual(m, rotated) - reference) < 1e-9);
  }
  CHECK_THROWS_AS((void)kl_residual(m, std::vector<Matrix>{}),
                  std::invalid_argument);
}

TEST_CASE("kl_residual frozen decay at eta = pi/3") {
  const double expected[4] = {0.75, 0.359035165409, 0.177465885806,
                              0.088474622288};
  double previous = std::sqrt(3.0);
  for (int rounds = 1; rounds <= 4; ++rounds) {
    const double value =
        kl_residual(dilation_from_protocol(ket0(), kPi / 3.0, rounds));
    CHECK(value == doctest::Approx(expected[rounds - 1]).epsilon(1e-9));
    CHECK(value < previous);
    previous = value;
  }
}

TEST_CASE("forgetfulness_probe reference behaviors") {
  // The identity channel told apart by orthogonal probes scores 1.
  CHECK(forgetfulness_probe(identity_channel(2), {ket0(), ket1()}) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // A constant channel is perfectly forgetful.
  std::mt19937 rng(55);
  const DensityMatrix sigma = test::random_qubit_state(rng);
  CHECK(forgetfulness_probe(constant_channel(sigma, 2),
                            default_probe_states()) < 1e-13);

  CHECK_THROWS_AS(
      (void)forgetfulness_probe(identity_channel(2), {}),
      std::invalid_argument);

  // Uncoupled protocol: the complement is the identity channel, and the
  // default probe set scores sqrt(9/8).
  const KrausChannel zeta_hat =
      complementary_channel(dilation_from_protocol(ket0(), 0.0, 1));
  CHECK(forgetfulness_probe(zeta_hat, default_probe_states()) ==
        doctest::Approx(std::sqrt(9.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("forgetfulness decays geometrically at eta = pi/3") {
  // Closed form for the default probes: sqrt(10)/4 * 2^{-N}.
  double previous = 10.0;
  for (int rounds = 1; rounds <= 4; ++rounds) {
    const KrausChannel zeta_hat = complementary_channel(
        dilation_from_protocol(ket0(), kPi / 3.0, rounds));
    const double value = forgetfulness_probe(zeta_hat, default_probe_states());
    const double expected =
        std::sqrt(10.0) / 4.0 * std::pow(2.0, -rounds);
    CHECK(value == doctest::Approx(expected).epsilon(1e-9));
    CHECK(value < previous);
    previous = value;
  }
  CHECK(std::sqrt(10.0) / 8.0 ==
        doctest::Approx(0.39528470752104744).epsilon(1e-15));
}

TEST_CASE("petz_recovery inverts what is invertible") {
  std::mt19937 rng(56);
  const DensityMatrix rho = test::random_qubit_state(rng);

  // Identity channel: recovery is the identity map.
  const KrausChannel r_id =
      petz_recovery(identity_channel(2), maximally_mixed());
  CHECK(max_abs_diff(apply_channel(r_id, rho).mat(), rho.mat()) < 1e-12);

  // Unitary channel: recovery conjugates back.
  const KrausChannel r_x = petz_recovery(pauli_x_channel(), maximally_mixed());
  const KrausChannel round_trip = compose(r_x, pauli_x_channel());
  CHECK(channel_fidelity(round_trip, identity_channel(2)) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // Constant channel: nothing to invert; the Choi fidelity with the identity
  // falls to 1/4 (two maximally-different Choi states).
  const KrausChannel pinned = constant_channel(ket0(), 2);
  const KrausChannel r_const = petz_recovery(pinned, maximally_mixed());
  CHECK(channel_fidelity(compose(r_const, pinned), identity_channel(2)) ==
        doctest::Approx(0.25).epsilon(1e-9));

  CHECK_THROWS_AS((void)petz_recovery(identity_channel(4), maximally_mixed()),
                  std::invalid_argument);
}

TEST_CASE("petz recovery fidelity frozen ramp at eta = pi/3") {
  // N = 1 is exactly 2/5 + sqrt(15)/10; the rest are frozen high-precision
  // evaluations of the same closed pipeline.
  const double expected[4] = {0.78729833462074169, 0.94025645360797976,
                              0.98455528479311250, 0.99610514954776141};
  CHECK(expected[0] ==
        doctest::Approx(0.4 + std::sqrt(15.0) / 10.0).epsilon(1e-15));
  double previous = 0.0;
  for (int rounds = 1; rounds <= 4; ++rounds) {
    const DilationIsometry m =
        dilation_from_protocol(ket0(), kPi / 3.0, rounds);
    const KrausChannel zeta = channel_from_dilation(m);
    const KrausChannel recovery = petz_recovery(zeta, maximally_mixed());
    const double f =
        channel_fidelity(compose(recovery, zeta), identity_channel(2));
    CHECK(f == doctest::Approx(expected[rounds - 1]).epsilon(1e-10));
    CHECK(f > previous);
    previous = f;
  }
}

TEST_CASE("choi_matrix basics") {
  const Matrix j_id = choi_matrix(identity_channel(2));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 1.0;
  CHECK(max_abs_diff(j_id, expected) < 1e-15);

  std::mt19937 rng(57);
  const DilationIsometry m = dilation_from_protocol(ket0(), 0.7, 2);
  const Matrix j = choi_matrix(channel_from_dilation(m));
  CHECK(std::abs(j.trace() - Complex(2.0, 0.0)) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(j);
  CHECK(solver.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("channel_fidelity and Bures distance reference values") {
  CHECK(channel_fidelity(identity_channel(2), identity_channel(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const KrausChannel depolarize = constant_channel(maximally_mixed(), 2);
  const double f = channel_fidelity(identity_channel(2), depolarize);
  CHECK(f == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(channel_fidelity(depolarize, identity_channel(2)) ==
        doctest::Approx(f).epsilon(1e-10));
  CHECK(channel_bures_distance(identity_channel(2), depolarize) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(channel_bures_distance(identity_channel(2), identity_channel(2)) <
        1e-6);
  CHECK_THROWS_AS(
      (void)channel_fidelity(identity_channel(2), identity_channel(4)),
      std::invalid_argument);
}

TEST_CASE("diamond_distance_bounds reference values") {
  const auto [zero_lower, zero_upper] =
      diamond_distance_bounds(identity_channel(2), identity_channel(2));
  CHECK(zero_lower < 1e-14);
  CHECK(zero_upper < 1e-14);

  const auto [lower, upper] =
      diamond_distance_bounds(identity_channel(2), pauli_x_channel());
  CHECK(lower == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(upper == doctest::Approx(4.0).epsilon(1e-12));

  std::mt19937 rng(58);
  for (double eta : {0.3, 0.9}) {
    const DilationIsometry m = dilation_from_protocol(ket0(), eta, 1);
    const KrausChannel zeta = channel_from_dilation(m);
    const KrausChannel recovery = petz_recovery(zeta, maximally_mixed());
    const auto [lo, hi] = diamond_distance_bounds(compose(recovery, zeta),
                                                  identity_channel(2));
    CHECK(lo >= -1e-14);
    CHECK(lo <= hi + 1e-14);
  }
}

TEST_CASE("correctability_report at the exact-recovery point") {
  const CorrectabilityReport report = correctability_report(
      kPi / 2.0, 1, ket0(), default_probe_states());
  CHECK(report.kl_residual < 1e-10);
  CHECK(report.forgetfulness < 1e-10);
  CHECK(report.recovery_fidelity >= 1.0 - 1e-9);
  CHECK(report.diamond_upper < 1e-9);
  CHECK(report.delta_bound < 1e-4);
  CHECK(report.bures_to_identity < 1e-4);
  CHECK(report.env_dim == 2);
}

TEST_CASE("correctability_report at the uncoupled point") {
  const CorrectabilityReport report =
      correctability_report(0.0, 1, ket0(), default_probe_states());
  CHECK(report.kl_residual == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(report.recovery_fidelity == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(report.recovery_fidelity <= 0.55);
  CHECK(report.forgetfulness ==
        doctest::Approx(std::sqrt(9.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("correctability_report trends are monotone in the round count") {
  CorrectabilityReport previous;
  for (int rounds = 1; rounds <= 4; ++rounds) {
    const CorrectabilityReport report = correctability_report(
        kPi / 3.0, rounds, ket0(), default_probe_states());
    CHECK(report.delta_bound ==
          doctest::Approx(2.0 * std::sqrt(2.0 * report.forgetfulness))
              .epsilon(1e-12));
    CHECK(report.bures_to_identity <= report.delta_bound + 1e-9);
    if (rounds > 1) {
      CHECK(report.kl_residual < previous.kl_residual);
      CHECK(report.forgetfulness < previous.forgetfulness);
      CHECK(report.recovery_fidelity > previous.recovery_fidelity);
      CHECK(report.diamond_upper < previous.diamond_upper);
    }
    previous = report;
  }
}
