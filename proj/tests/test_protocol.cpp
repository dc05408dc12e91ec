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

#include "homog/gates.hpp"
#include "homog/protocol.hpp"
#include "support.hpp"

using namespace homog;
using test::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix ket0() { return bloch_state(0.0, 0.0, 1.0); }
DensityMatrix ket1() { return bloch_state(0.0, 0.0, -1.0); }
DensityMatrix ket_plus() { return bloch_state(1.0, 0.0, 0.0); }

// Independent two-qubit reference for one collision: conjugate the joint
// product state by the dense partial swap and trace out either side.
std::pair<Matrix, Matrix> collide_dense(const DensityMatrix& system,
                                        const DensityMatrix& ancilla,
                                        double eta) {
  const Matrix u = partial_swap(eta).mat();
  const Matrix joint = u * kron(system.mat(), ancilla.mat()) * u.adjoint();
  const SubsystemShape shape = SubsystemShape::qubits(2);
  return {partial_trace(joint, shape, {0}), partial_trace(joint, shape, {1})};
}

ProtocolConfig config_for(double eta, int rounds, ProtocolMode mode) {
  ProtocolConfig config;
  config.eta = eta;
  config.num_rounds = rounds;
  config.mode = mode;
  return config;
}

}  // namespace

TEST_CASE("collide matches the dense two-qubit reference") {
  std::mt19937 rng(41);
  for (double eta : {0.17, kPi / 4.0, kPi / 3.0, -0.9, kPi / 2.0}) {
    for (int trial = 0; trial < 6; ++trial) {
      const DensityMatrix rho = test::random_qubit_state(rng);
      const DensityMatrix xi = test::random_qubit_state(rng);
      const auto [sys_out, anc_out] = collide(rho, xi, eta);
      const auto [sys_ref, anc_ref] = collide_dense(rho, xi, eta);
      CHECK(max_abs_diff(sys_out.mat(), sys_ref) < 1e-13);
      CHECK(max_abs_diff(anc_out.mat(), anc_ref) < 1e-13);
    }
  }
}

TEST_CASE("collide fixed point and full-swap limits") {
  std::mt19937 rng(42);
  const DensityMatrix xi = test::random_qubit_state(rng);
  // Identical states are unchanged for every coupling.
  const auto [same_sys, same_anc] = collide(xi, xi, 0.61);
  CHECK(max_abs_diff(same_sys.mat(), xi.mat()) < 1e-14);
  CHECK(max_abs_diff(same_anc.mat(), xi.mat()) < 1e-14);

  // eta = pi/2 swaps the marginals outright; eta = 0 leaves them alone.
  const DensityMatrix rho = test::random_qubit_state(rng);
  const auto [swapped_sys, swapped_anc] = collide(rho, xi, kPi / 2.0);
  CHECK(max_abs_diff(swapped_sys.mat(), xi.mat()) < 1e-14);
  CHECK(max_abs_diff(swapped_anc.mat(), rho.mat()) < 1e-14);
  const auto [idle_sys, idle_anc] = collide(rho, xi, 0.0);
  CHECK(max_abs_diff(idle_sys.mat(), rho.mat()) == 0.0);
  CHECK(max_abs_diff(idle_anc.mat(), xi.mat()) == 0.0);
}

TEST_CASE("collide mixes populations with weights cos^2 and sin^2") {
  const double eta = 0.7;
  const auto [sys_out, anc_out] = collide(ket1(), ket0(), eta);
  const double s2 = std::sin(eta) * std::sin(eta);
  // Diagonal states have vanishing commutator, so the map is classical here.
  CHECK(sys_out.mat()(0, 0).real() == doctest::Approx(s2).epsilon(1e-14));
  CHECK(sys_out.mat()(1, 1).real() == doctest::Approx(1 - s2).epsilon(1e-14));
  CHECK(anc_out.mat()(0, 0).real() == doctest::Approx(1 - s2).epsilon(1e-14));
  CHECK(std::abs(sys_out.mat()(0, 1)) < 1e-16);
}

TEST_CASE("collide generates coherence through the commutator term") {
  const double eta = kPi / 4.0;
  const auto [sys_out, anc_out] = collide(ket_plus(), ket0(), eta);
  const auto [sys_ref, anc_ref] = collide_dense(ket_plus(), ket0(), eta);
  CHECK(max_abs_diff(sys_out.mat(), sys_ref) < 1e-14);
  CHECK(max_abs_diff(anc_out.mat(), anc_ref) < 1e-14);
  // The i[xi, rho] term is what moves the off-diagonal away from cos^2/2:
  // [xi, rho] = (1/2) [[0, 1], [-1, 0]] here, so rho'(0,1) picks up +i c s/2.
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  const Complex expected_offdiag(c * c * 0.5, c * s * 0.5);
  CHECK(std::abs(sys_out.mat()(0, 1) - expected_offdiag) < 1e-14);
}

TEST_CASE("collide requires single-qubit operands") {
  CHECK_THROWS_AS((void)collide(bell_state(BellState::PhiPlus), ket0(), 0.3),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)collide(ket0(), bell_state(BellState::PhiPlus), 0.3),
                  std::invalid_argument);
}

TEST_CASE("run_protocol records round zero faithfully") {
  const Trajectory t =
      run_protocol(ket1(), ket0(),
                   config_for(kPi / 8.0, 0, ProtocolMode::Reduced));
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].round == 0);
  CHECK(max_abs_diff(t.steps[0].system_state.mat(), ket1().mat()) == 0.0);
  CHECK(max_abs_diff(t.steps[0].ancilla_state.mat(), ket0().mat()) == 0.0);
  CHECK(t.steps[0].distance_to_target ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(t.steps[0].contraction_factor == 0.0);
}

TEST_CASE("population decay follows the exact contraction law") {
  // Excited system, ground reservoir: the excited population after l rounds
  // is cos^{2l}(eta), so the Hilbert-Schmidt distance scales the same way.
  const double eta = kPi / 8.0;
  const int rounds = 30;
  const double gamma = std::cos(eta) * std::cos(eta);
  for (ProtocolMode mode : {ProtocolMode::Reduced, ProtocolMode::FullState}) {
    ProtocolConfig config = config_for(eta, rounds, mode);
    if (mode == ProtocolMode::FullState) {
      config.num_rounds = 8;  // keep the dense joint register tractable
    }
    const Trajectory t = run_protocol(ket1(), ket0(), config);
    double expected = 1.0;
    for (const TrajectoryStep& step : t.steps) {
      CHECK(step.system_state.mat()(1, 1).real() ==
            doctest::Approx(expected).epsilon(1e-10));
      CHECK(step.distance_to_target ==
            doctest::Approx(std::sqrt(2.0) * expected).epsilon(1e-9));
      if (step.round > 0) {
        CHECK(step.contraction_factor == doctest::Approx(gamma).epsilon(1e-9));
      }
      expected *= gamma;
    }
  }
}

TEST_CASE("reduced and full-state modes agree on random configurations") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const DensityMatrix initial = test::random_qubit_state(rng);
    const DensityMatrix reservoir = test::random_qubit_state(rng);
    const double eta = 0.2 + 0.5 * trial / 6.0;
    const int rounds = 1 + trial;
    const Trajectory reduced = run_protocol(
        initial, reservoir, config_for(eta, rounds, ProtocolMode::Reduced));
    const Trajectory full = run_protocol(
        initial, reservoir, config_for(eta, rounds, ProtocolMode::FullState));
    REQUIRE(reduced.steps.size() == full.steps.size());
    for (std::size_t i = 0; i < reduced.steps.size(); ++i) {
      CHECK(max_abs_diff(reduced.steps[i].system_state.mat(),
                         full.steps[i].system_state.mat()) < 1e-10);
      CHECK(max_abs_diff(reduced.steps[i].ancilla_state.mat(),
                         full.steps[i].ancilla_state.mat()) < 1e-10);
      CHECK(std::abs(reduced.steps[i].distance_to_target -
                     full.steps[i].distance_to_target) < 1e-10);
    }
  }
}

TEST_CASE("matching initial and reservoir states pin the distance at zero") {
  std::mt19937 rng(45);
  const DensityMatrix state = test::random_qubit_state(rng);
  const Trajectory t = run_protocol(
      state, state, config_for(kPi / 8.0, 5, ProtocolMode::Reduced));
  REQUIRE(t.steps.size() == 6);
  for (const TrajectoryStep& step : t.steps) {
    CHECK(step.distance_to_target < 1e-13);
  }
}

TEST_CASE("trajectory states stay physical") {
  std::mt19937 rng(44);
  const DensityMatrix initial = test::random_qubit_state(rng);
  const DensityMatrix reservoir = test::random_qubit_state(rng);
  const Trajectory t = run_protocol(
      initial, reservoir, config_for(0.9, 12, ProtocolMode::Reduced));
  for (const TrajectoryStep& step : t.steps) {
    CHECK(std::abs(step.system_state.mat().trace() - Complex(1.0, 0.0)) <
          1e-12);
    CHECK(hermiticity_error(step.system_state.mat()) < 1e-12);
    CHECK(std::abs(step.ancilla_state.mat().trace() - Complex(1.0, 0.0)) <
          1e-12);
  }
}

TEST_CASE("full-state ancilla marginals freeze after their collision") {
  // After round k, reservoir qubit k never interacts again, so recomputing
  // its marginal at the end of the run must match the recorded snapshot.
  const DensityMatrix initial = ket_plus();
  const DensityMatrix reservoir = ket0();
  const double eta = kPi / 3.0;
  const int rounds = 4;

  // Reference joint evolution, kept here independent of run_protocol.
  Matrix joint = initial.mat();
  for (int k = 0; k < rounds; ++k) {
    joint = kron(joint, reservoir.mat());
  }
  const int wires = rounds + 1;
  for (int k = 1; k <= rounds; ++k) {
    conjugate_gate_inplace(joint, partial_swap(eta), {0, k}, wires);
  }
  const Trajectory t = run_protocol(
      initial, reservoir, config_for(eta, rounds, ProtocolMode::FullState));
  const SubsystemShape shape = SubsystemShape::qubits(wires);
  for (int k = 1; k <= rounds; ++k) {
    const Matrix marginal = partial_trace(joint, shape, {k});
    CHECK(max_abs_diff(marginal, t.steps[k].ancilla_state.mat()) < 1e-12);
  }
  CHECK(max_abs_diff(partial_trace(joint, shape, {0}),
                     t.steps[rounds].system_state.mat()) < 1e-12);
}

TEST_CASE("protocol config validation") {
  ProtocolConfig config = config_for(0.4, -1, ProtocolMode::Reduced);
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = config_for(0.4, 3, ProtocolMode::Reduced);
  config.delta_target = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = config_for(std::numeric_limits<double>::infinity(), 3,
                      ProtocolMode::Reduced);
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = config_for(0.4, 12, ProtocolMode::FullState);
  config.full_state_qubit_cap = 10;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)run_protocol(ket0(), bell_state(BellState::PhiPlus),
                         config_for(0.4, 1, ProtocolMode::Reduced)),
      std::invalid_argument);
}

TEST_CASE("convergence_report captures threshold, monotonicity, and gamma") {
  const double eta = kPi / 8.0;
  const Trajectory t = run_protocol(
      ket1(), ket0(), config_for(eta, 50, ProtocolMode::Reduced));
  const ConvergenceReport report = convergence_report(t, 1e-3);
  REQUIRE(report.first_round_below_delta.has_value());
  CHECK(*report.first_round_below_delta == 46);
  CHECK(report.monotone);
  CHECK(report.gamma_max ==
        doctest::Approx(std::cos(eta) * std::cos(eta)).epsilon(1e-9));

  // A target the run never reaches.
  const ConvergenceReport far = convergence_report(t, 1e-30);
  CHECK_FALSE(far.first_round_below_delta.has_value());

  // Already converged at round zero.
  const Trajectory still = run_protocol(
      ket0(), ket0(), config_for(eta, 3, ProtocolMode::Reduced));
  const ConvergenceReport same = convergence_report(still, 1e-3);
  REQUIRE(same.first_round_below_delta.has_value());
  CHECK(*same.first_round_below_delta == 0);
  CHECK(same.monotone);

  CHECK_THROWS_AS((void)convergence_report(Trajectory{}, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("steady_state_threshold frozen references") {
  // |1> -> |0> at eta = pi/8: distance sqrt(2) cos^{2l}(eta) first dips
  // below 1e-3 at l = 46.
  const std::optional<int> n =
      steady_state_threshold(ket1(), ket0(), kPi / 8.0, 1e-3, 200);
  REQUIRE(n.has_value());
  CHECK(*n == 46);

  CHECK(steady_state_threshold(ket0(), ket0(), kPi / 8.0, 1e-3, 10) == 0);
  CHECK(steady_state_threshold(ket1(), ket0(), kPi / 2.0, 1e-3, 10) == 1);
  CHECK_FALSE(
      steady_state_threshold(ket1(), ket0(), kPi / 8.0, 1e-3, 10).has_value());
  CHECK_THROWS_AS((void)steady_state_threshold(ket1(), ket0(), 0.3, 2.0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)steady_state_threshold(ket1(), ket0(), 0.3, 1e-3, 0),
                  std::invalid_argument);
}

TEST_CASE("gamma_max for the canonical decay equals cos^2(pi/8)") {
  const Trajectory t = run_protocol(
      ket1(), ket0(), config_for(kPi / 8.0, 30, ProtocolMode::Reduced));
  const ConvergenceReport report = convergence_report(t, 1e-3);
  CHECK(report.gamma_max ==
        doctest::Approx(0.8535533905932737).epsilon(1e-9));
}
