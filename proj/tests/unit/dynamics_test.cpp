// Copyright 2026 The VISTA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "vista/core.hpp"
#include "vista/dynamics.hpp"
#include "vista/errors.hpp"

namespace vista {
namespace {

const HamiltonianSpec kZ(double theta) { return {theta, 0.0, 1.0}; }

TEST(ClosedForm, NoiselessDephasingIsPureGhz) {
  const ClosedFormState s = evolve_closed_form(3, kZ(0.7), {ChannelKind::Dephasing, 0.0});
  EXPECT_EQ(s.family, StateFamily::PureGhz);
  EXPECT_NEAR(std::abs(s.coherence()), 0.5, 1e-15);
}

TEST(ClosedForm, DephasedCoherenceMatchesOracle) {
  const ChannelSpec ch{ChannelKind::Dephasing, 0.1};
  const ClosedFormState s = evolve_closed_form(2, kZ(0.2), ch);
  EXPECT_NEAR(std::abs(s.coherence()), 0.5 * std::exp(-0.4), 1e-15);
  EXPECT_NEAR(std::abs(s.coherence()), 0.33516, 1e-5);
  const DenseOperator rk4 = lindblad_rk4_oracle(outer(ghz_vector(2)), kZ(0.2), ch);
  EXPECT_NEAR(std::abs(rk4(0, 3)), std::abs(s.coherence()), 1e-9);
}

TEST(ClosedForm, AmpDampPopulations) {
  const ClosedFormState s =
      evolve_closed_form(3, kZ(0.1), {ChannelKind::AmplitudeDamping, std::log(2.0)});
  for (std::uint64_t x = 1; x < 8; ++x) EXPECT_NEAR(s.population(x), 0.5 * 0.125, 1e-15);
  EXPECT_NEAR(s.population(0), 0.5 + 0.5 * 0.125, 1e-15);
}

TEST(ClosedForm, RejectsTransverseField) {
  EXPECT_THROW(evolve_closed_form(2, {0.1, 0.2, 1.0}, {ChannelKind::Dephasing, 0.1}),
               UnsupportedError);
}

TEST(ClosedForm, CoherenceMonotoneInGammaAndN) {
  for (ChannelKind ch : {ChannelKind::Dephasing, ChannelKind::AmplitudeDamping}) {
    double prev_g = 1.0;
    for (double g : {0.0, 0.01, 0.05, 0.1, 0.2}) {
      const double c = std::abs(evolve_closed_form(4, kZ(0.1), {ch, g}).coherence());
      EXPECT_LE(c, prev_g);
      prev_g = c;
    }
    double prev_n = 1.0;
    for (int n = 1; n <= 8; ++n) {
      const double c = std::abs(evolve_closed_form(n, kZ(0.1), {ch, 0.05}).coherence());
      EXPECT_LT(c, prev_n);
      prev_n = c;
    }
  }
}

TEST(ClosedForm, DephasedPurityMatchesDense) {
  for (int n = 1; n <= 6; ++n) {
    for (double g : {0.0, 0.03, 0.2}) {
      const ClosedFormState s = evolve_closed_form(n, kZ(0.3), {ChannelKind::Dephasing, g});
      EXPECT_NEAR(s.purity(), 0.5 * (1.0 + std::exp(-4.0 * n * g)), 1e-14);
      EXPECT_NEAR(purity(to_dense(s)), s.purity(), 1e-10);
    }
  }
}

TEST(ClosedForm, AmpDampPurityMatchesDense) {
  for (int n = 1; n <= 6; ++n) {
    const ClosedFormState s =
        evolve_closed_form(n, kZ(0.3), {ChannelKind::AmplitudeDamping, 0.17});
    EXPECT_NEAR(purity(to_dense(s)), s.purity(), 1e-10);
  }
}

TEST(CircuitAnsatz, ZeroAngleIsPure) {
  for (AnsatzKind k : {AnsatzKind::Pure, AnsatzKind::Dephasing, AnsatzKind::AmplitudeDamping}) {
    const ClosedFormState s = circuit_ansatz_state(3, 0.2, CircuitAngle(0.0), k);
    EXPECT_EQ(s.family, StateFamily::PureGhz);
    EXPECT_LE(max_abs_diff(to_dense(s),
                           to_dense(evolve_closed_form(3, kZ(0.2), ChannelSpec{}))),
              1e-15);
  }
}

TEST(CircuitAnsatz, MatchedDephasingEqualsProbe) {
  for (int n = 1; n <= 6; ++n) {
    const double g = 0.07;
    const DenseOperator probe =
        to_dense(evolve_closed_form(n, kZ(0.23), {ChannelKind::Dephasing, g}));
    const DenseOperator circ = to_dense(circuit_ansatz_state(
        n, 0.23, CircuitAngle(matched_angle(g, AnsatzKind::Dephasing)), AnsatzKind::Dephasing));
    EXPECT_LE(max_abs_diff(probe, circ), 1e-12);
  }
}

TEST(CircuitAnsatz, MatchedAmpDampCoherence) {
  const double g = 0.13;
  const double phi = matched_angle(g, AnsatzKind::AmplitudeDamping);
  EXPECT_NEAR(std::cos(phi), std::exp(-g / 2.0), 1e-15);
  const ClosedFormState s =
      circuit_ansatz_state(4, 0.05, CircuitAngle(phi), AnsatzKind::AmplitudeDamping);
  EXPECT_NEAR(std::abs(s.coherence()), 0.5 * std::exp(-4.0 * g / 2.0), 1e-14);
  const DenseOperator probe =
      to_dense(evolve_closed_form(4, kZ(0.05), {ChannelKind::AmplitudeDamping, g}));
  EXPECT_LE(max_abs_diff(probe, to_dense(s)), 1e-12);
}

TEST(CircuitAnsatz, AngleDomain) {
  EXPECT_THROW(CircuitAngle(-0.1), DomainError);
  EXPECT_THROW(CircuitAngle(std::acos(-1.0) / 2.0), DomainError);
}

TEST(DecayInversion, RoundTrip) {
  for (AnsatzKind k : {AnsatzKind::Dephasing, AnsatzKind::AmplitudeDamping}) {
    for (double g : {0.0, 0.05, 0.3}) {
      EXPECT_NEAR(decay_from_angle(matched_angle(g, k), k), g, 1e-14);
    }
  }
}

TEST(ToDense, PureGhzTwoQubits) {
  const DenseOperator r = to_dense(evolve_closed_form(2, kZ(0.0), ChannelSpec{}));
  int nonzero = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (std::abs(r(i, j)) > 1e-15) {
        ++nonzero;
        EXPECT_NEAR(std::abs(r(i, j)), 0.5, 1e-15);
      }
    }
  }
  EXPECT_EQ(nonzero, 4);
}

TEST(ToDense, TraceAndHermiticity) {
  const DenseOperator r =
      to_dense(evolve_closed_form(5, kZ(0.3), {ChannelKind::AmplitudeDamping, 0.4}));
  EXPECT_NEAR(r.trace().real(), 1.0, 1e-12);
  EXPECT_TRUE(is_hermitian(r));
}

TEST(ToDense, FullDecayToGround) {
  const DenseOperator r =
      to_dense(evolve_closed_form(1, kZ(0.3), {ChannelKind::AmplitudeDamping, 30.0}));
  EXPECT_NEAR(r(0, 0).real(), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(r(1, 1)), 0.0, 1e-10);
}

TEST(ToDense, Guard) {
  EXPECT_THROW(to_dense(evolve_closed_form(11, kZ(0.1), ChannelSpec{})), DimensionError);
}

TEST(Rk4Oracle, IdentityEvolution) {
  const DenseOperator rho = outer(ghz_vector(3));
  EXPECT_LE(max_abs_diff(lindblad_rk4_oracle(rho, kZ(0.0), ChannelSpec{}), rho), 1e-15);
}

TEST(Rk4Oracle, MatchesDephasedClosedForm) {
  const ChannelSpec ch{ChannelKind::Dephasing, 0.005};
  const DenseOperator rk4 = lindblad_rk4_oracle(outer(ghz_vector(3)), kZ(0.05), ch, 2000);
  EXPECT_LE(max_abs_diff(rk4, to_dense(evolve_closed_form(3, kZ(0.05), ch))), 1e-6);
}

TEST(Rk4Oracle, SingleQubitAmplitudeDamping) {
  const double g = 0.3, theta = 0.1;
  DenseVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DenseOperator r = lindblad_rk4_oracle(outer(plus), kZ(theta),
                                              {ChannelKind::AmplitudeDamping, g}, 2000);
  EXPECT_NEAR(r(0, 0).real(), 1.0 - 0.5 * std::exp(-g), 1e-6);
  EXPECT_NEAR(r(1, 1).real(), 0.5 * std::exp(-g), 1e-6);
  const Complex c = 0.5 * std::exp(-g / 2.0) * std::polar(1.0, -2.0 * theta);
  EXPECT_NEAR(std::abs(r(0, 1) - c), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(r(1, 0) - std::conj(c)), 0.0, 1e-6);
}

TEST(Rk4Oracle, Preconditions) {
  const DenseOperator rho = outer(ghz_vector(2));
  EXPECT_THROW(lindblad_rk4_oracle(rho, kZ(0.1), ChannelSpec{}, 50), DomainError);
  EXPECT_THROW(lindblad_rk4_oracle(outer(ghz_vector(9)), kZ(0.1), ChannelSpec{}, 100),
               DimensionError);
}

TEST(LocalChannel, AgreesWithRk4WithTransverseField) {
  const HamiltonianSpec ham{0.3, 0.2, 1.0};
  for (ChannelSpec ch : {ChannelSpec{ChannelKind::Dephasing, 0.05},
                         ChannelSpec{ChannelKind::AmplitudeDamping, 0.1}}) {
    const DenseOperator rho = outer(ghz_vector(3));
    EXPECT_LE(max_abs_diff(local_channel_evolve(rho, ham, ch, 2000),
                           lindblad_rk4_oracle(rho, ham, ch, 2000)),
              1e-9);
  }
}

DenseVector exact_unitary(const DenseVector& psi, const HamiltonianSpec& ham, int n) {
  const DenseOperator h = ham.theta_z * collective_operator(n, Axis::Z) +
                          ham.theta_x * collective_operator(n, Axis::X);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases(i) = std::polar(1.0, -es.eigenvalues()(i) * ham.time);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * psi;
}

double fidelity(const DenseVector& a, const DenseVector& b) {
  return std::norm(a.dot(b));
}

TEST(Trotter, CommutingLimits) {
  const DenseVector g = ghz_vector(3);
  for (int d : {1, 5}) {
    const DenseVector z = trotter_evolve(g, {0.4, 0.0, 1.0}, d);
    EXPECT_NEAR(std::abs(z(0) - g(0) * std::polar(1.0, -3 * 0.4)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(z(7) - g(7) * std::polar(1.0, 3 * 0.4)), 0.0, 1e-12);
    const HamiltonianSpec xs{0.0, 0.35, 1.0};
    EXPECT_NEAR(fidelity(trotter_evolve(g, xs, d), exact_unitary(g, xs, 3)), 1.0, 1e-12);
  }
}

TEST(Trotter, MatchesMatrixExponential) {
  const HamiltonianSpec ham{0.3, 0.2, 1.0};
  const DenseVector g = ghz_vector(2);
  const DenseVector t = trotter_evolve(g, ham, 64);
  EXPECT_NEAR(t.norm(), 1.0, 1e-12);
  EXPECT_GE(fidelity(t, exact_unitary(g, ham, 2)), 1.0 - 1e-4);
}

TEST(Trotter, ErrorShrinksWithSteps) {
  const HamiltonianSpec ham{0.3, 0.2, 1.0};
  const DenseVector g = ghz_vector(3);
  const DenseVector exact = exact_unitary(g, ham, 3);
  double prev = 1.0;
  for (int d : {8, 16, 32, 64}) {
    const double deficit = 1.0 - fidelity(trotter_evolve(g, ham, d), exact);
    EXPECT_LE(deficit, 0.5 * prev + 1e-15) << "d=" << d;
    prev = deficit;
  }
}

}  // namespace
}  // namespace vista
