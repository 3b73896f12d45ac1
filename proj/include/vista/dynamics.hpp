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

#pragma once

#include <cstdint>

#include "vista/core.hpp"

namespace vista {

enum class ChannelKind { None, Dephasing, AmplitudeDamping };

struct ChannelSpec {
  ChannelKind kind = ChannelKind::None;
  double gamma = 0.0;  // rate per unit time

  void validate() const;
};

/// H = theta_z * sum Z_j + theta_x * sum X_j, evolved for `time`.
struct HamiltonianSpec {
  double theta_z = 0.0;
  double theta_x = 0.0;
  double time = 1.0;

  void validate() const;
};

enum class StateFamily { PureGhz, DephasedGhz, AmpDampGhz };

/// GHZ-family X-state: populations on |0..0>, |1..1> (or the damped
/// binomial shell) plus one corner coherence <0..0|rho|1..1>.
/// `theta` and `decay` are already multiplied by the evolution time.
struct ClosedFormState {
  int n = 1;
  StateFamily family = StateFamily::PureGhz;
  double theta = 0.0;
  double decay = 0.0;

  Complex coherence() const;
  /// <x|rho|x> for a basis index x.
  double population(std::uint64_t index) const;
  double purity() const;
};

/// Circuit noise angle, 0 <= phi < pi/2.
struct CircuitAngle {
  double phi = 0.0;

  explicit CircuitAngle(double value);
};

enum class AnsatzKind { Pure, Dephasing, AmplitudeDamping };

ClosedFormState evolve_closed_form(int n, const HamiltonianSpec& ham,
                                   const ChannelSpec& ch);

ClosedFormState circuit_ansatz_state(int n, double theta_hat,
                                     CircuitAngle phi, AnsatzKind kind);

/// Channel-equivalent decay for a circuit angle: -1/2 ln cos(phi) for
/// dephasing, -2 ln cos(phi) for amplitude damping, 0 for the pure circuit.
double decay_from_angle(double phi, AnsatzKind kind);

/// Angle that reproduces a channel rate; inverse of decay_from_angle.
double matched_angle(double gamma, AnsatzKind kind);

DenseOperator to_dense(const ClosedFormState& s);

/// Fixed-step RK4 integration of the per-qubit Lindblad equation.
DenseOperator lindblad_rk4_oracle(const DenseOperator& rho0,
                                  const HamiltonianSpec& ham,
                                  const ChannelSpec& ch, int steps = 2000);

/// Same generator as lindblad_rk4_oracle, but every term acts on one site,
/// so the single-qubit propagator is integrated once and applied site by
/// site. Works up to the operator guard.
DenseOperator local_channel_evolve(const DenseOperator& rho0,
                                   const HamiltonianSpec& ham,
                                   const ChannelSpec& ch, int steps = 2000);

/// d repetitions of exp(-i theta_z Z t/d) exp(-i theta_x X t/d) on every
/// qubit of a state vector.
DenseVector trotter_evolve(const DenseVector& state,
                           const HamiltonianSpec& ham, int d);

/// Applies the same 2x2 unitary to every qubit.
DenseVector apply_local_unitary(const DenseVector& state,
                                const Eigen::Matrix2cd& u);

}  // namespace vista
