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

#include "vista/dynamics.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "vista/errors.hpp"

namespace vista {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Lindblad right-hand side for the per-qubit generator. `diag` holds the
// elementwise part (Z Hamiltonian, dephasing, damping anticommutator).
class Generator {
 public:
  Generator(int n, const HamiltonianSpec& ham, const ChannelSpec& ch)
      : n_(n), dim_(Eigen::Index{1} << n), ham_(ham), ch_(ch) {
    diag_.resize(dim_, dim_);
    const Complex i(0.0, 1.0);
    for (Eigen::Index a = 0; a < dim_; ++a) {
      const int wa = std::popcount(static_cast<std::uint64_t>(a));
      for (Eigen::Index b = 0; b < dim_; ++b) {
        const int wb = std::popcount(static_cast<std::uint64_t>(b));
        // <a|sum Z|a> = n - 2|a|
        Complex c = -i * ham.theta_z * static_cast<double>(2 * (wb - wa));
        if (ch.kind == ChannelKind::Dephasing) {
          c -= 2.0 * ch.gamma *
               std::popcount(static_cast<std::uint64_t>(a ^ b));
        } else if (ch.kind == ChannelKind::AmplitudeDamping) {
          c -= 0.5 * ch.gamma * (wa + wb);
        }
        diag_(a, b) = c;
      }
    }
  }

  void apply(const DenseOperator& rho, DenseOperator& out) const {
    out = diag_.cwiseProduct(rho);
    if (ham_.theta_x != 0.0) {
      const Complex mi(0.0, -ham_.theta_x);
      for (int q = 0; q < n_; ++q) {
        const Eigen::Index m = static_cast<Eigen::Index>(qubit_mask(n_, q));
        for (Eigen::Index a = 0; a < dim_; ++a) {
          for (Eigen::Index b = 0; b < dim_; ++b) {
            out(a, b) += mi * (rho(a ^ m, b) - rho(a, b ^ m));
          }
        }
      }
    }
    if (ch_.kind == ChannelKind::AmplitudeDamping && ch_.gamma != 0.0) {
      for (int q = 0; q < n_; ++q) {
        const Eigen::Index m = static_cast<Eigen::Index>(qubit_mask(n_, q));
        for (Eigen::Index a = 0; a < dim_; ++a) {
          if (a & m) continue;
          for (Eigen::Index b = 0; b < dim_; ++b) {
            if (b & m) continue;
            out(a, b) += ch_.gamma * rho(a | m, b | m);
          }
        }
      }
    }
  }

 private:
  int n_;
  Eigen::Index dim_;
  HamiltonianSpec ham_;
  ChannelSpec ch_;
  DenseOperator diag_;
};

DenseOperator integrate(const DenseOperator& rho0, const HamiltonianSpec& ham,
                        const ChannelSpec& ch, int steps) {
  const int n = qubits_for_dim(rho0.rows());
  Generator gen(n, ham, ch);
  const double dt = ham.time / steps;
  DenseOperator rho = rho0;
  DenseOperator k1, k2, k3, k4, tmp;
  for (int s = 0; s < steps; ++s) {
    gen.apply(rho, k1);
    tmp = rho + (0.5 * dt) * k1;
    gen.apply(tmp, k2);
    tmp = rho + (0.5 * dt) * k2;
    gen.apply(tmp, k3);
    tmp = rho + dt * k3;
    gen.apply(tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

void check_trace(const DenseOperator& before, const DenseOperator& after,
                 int steps) {
  const double drift = std::abs(after.trace() - before.trace());
  if (drift > 1e-6) {
    throw IntegratorError("trace drifted by " + std::to_string(drift) +
                          " over " + std::to_string(steps) +
                          " steps; try doubling the step count");
  }
}

void require_integrable(const DenseOperator& rho0, const HamiltonianSpec& ham,
                        const ChannelSpec& ch, int steps) {
  ham.validate();
  ch.validate();
  if (rho0.rows() != rho0.cols()) {
    throw DimensionError("density matrix must be square");
  }
  if (steps < 100) {
    throw DomainError("RK4 needs at least 100 steps");
  }
}

}  // namespace

void ChannelSpec::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("channel rate must be finite and non-negative");
  }
  if (kind == ChannelKind::None && gamma != 0.0) {
    throw DomainError("a noiseless channel cannot carry a rate");
  }
}

void HamiltonianSpec::validate() const {
  if (!std::isfinite(theta_z) || !std::isfinite(theta_x)) {
    throw DomainError("Hamiltonian coefficients must be finite");
  }
  if (!(time > 0.0) || !std::isfinite(time)) {
    throw DomainError("evolution time must be positive");
  }
}

Complex ClosedFormState::coherence() const {
  double magnitude = 0.5;
  switch (family) {
    case StateFamily::PureGhz:
      break;
    case StateFamily::DephasedGhz:
      magnitude *= std::exp(-2.0 * n * decay);
      break;
    case StateFamily::AmpDampGhz:
      magnitude *= std::exp(-0.5 * n * decay);
      break;
  }
  return std::polar(magnitude, -2.0 * n * theta);
}

double ClosedFormState::population(std::uint64_t index) const {
  const std::uint64_t last = (std::uint64_t{1} << n) - 1;
  if (family != StateFamily::AmpDampGhz) {
    return (index == 0 || index == last) ? 0.5 : 0.0;
  }
  // Each excited qubit survives with probability a.
  const double a = std::exp(-decay);
  const int w = std::popcount(index);
  double p = 0.5 * std::pow(a, w) * std::pow(1.0 - a, n - w);
  if (index == 0) p += 0.5;
  return p;
}

double ClosedFormState::purity() const {
  switch (family) {
    case StateFamily::PureGhz:
      return 1.0;
    case StateFamily::DephasedGhz:
      return 0.5 * (1.0 + std::exp(-4.0 * n * decay));
    case StateFamily::AmpDampGhz: {
      const double a = std::exp(-decay);
      return 0.25 + 0.5 * std::pow(1.0 - a, n) + 0.5 * std::exp(-n * decay) +
             0.25 * std::pow(a * a + (1.0 - a) * (1.0 - a), n);
    }
  }
  return 1.0;
}

CircuitAngle::CircuitAngle(double value) : phi(value) {
  if (!(value >= 0.0 && value < kHalfPi)) {
    throw DomainError("circuit angle must lie in [0, pi/2)");
  }
}

ClosedFormState evolve_closed_form(int n, const HamiltonianSpec& ham,
                                   const ChannelSpec& ch) {
  ham.validate();
  ch.validate();
  if (ham.theta_x != 0.0) {
    throw UnsupportedError(
        "no closed form when the Hamiltonian has an X component");
  }
  if (n < 1 || n > 62) throw DimensionError("qubit count out of range");
  ClosedFormState s;
  s.n = n;
  s.theta = ham.theta_z * ham.time;
  s.decay = ch.gamma * ham.time;
  if (ch.kind == ChannelKind::None || s.decay == 0.0) {
    s.family = StateFamily::PureGhz;
    s.decay = 0.0;
  } else if (ch.kind == ChannelKind::Dephasing) {
    s.family = StateFamily::DephasedGhz;
  } else {
    s.family = StateFamily::AmpDampGhz;
  }
  return s;
}

double decay_from_angle(double phi, AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::Pure:
      return 0.0;
    case AnsatzKind::Dephasing:
      return -0.5 * std::log(std::cos(phi));
    case AnsatzKind::AmplitudeDamping:
      return -2.0 * std::log(std::cos(phi));
  }
  return 0.0;
}

double matched_angle(double gamma, AnsatzKind kind) {
  if (!(gamma >= 0.0)) throw DomainError("rate must be non-negative");
  switch (kind) {
    case AnsatzKind::Pure:
      return 0.0;
    case AnsatzKind::Dephasing:
      return std::acos(std::exp(-2.0 * gamma));
    case AnsatzKind::AmplitudeDamping:
      return std::acos(std::exp(-0.5 * gamma));
  }
  return 0.0;
}

ClosedFormState circuit_ansatz_state(int n, double theta_hat,
                                     CircuitAngle phi, AnsatzKind kind) {
  if (n < 1 || n > 62) throw DimensionError("qubit count out of range");
  ClosedFormState s;
  s.n = n;
  s.theta = theta_hat;
  s.decay = decay_from_angle(phi.phi, kind);
  if (s.decay == 0.0) {
    s.family = StateFamily::PureGhz;
  } else if (kind == AnsatzKind::Dephasing) {
    s.family = StateFamily::DephasedGhz;
  } else {
    s.family = StateFamily::AmpDampGhz;
  }
  return s;
}

DenseOperator to_dense(const ClosedFormState& s) {
  if (s.n < 1 || s.n > kMaxOperatorQubits) {
    throw DimensionError("closed-form state too large to materialize");
  }
  const Eigen::Index dim = Eigen::Index{1} << s.n;
  DenseOperator rho = DenseOperator::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    rho(x, x) = s.population(static_cast<std::uint64_t>(x));
  }
  const Complex c = s.coherence();
  rho(0, dim - 1) = c;
  rho(dim - 1, 0) = std::conj(c);
  return rho;
}

DenseOperator lindblad_rk4_oracle(const DenseOperator& rho0,
                                  const HamiltonianSpec& ham,
                                  const ChannelSpec& ch, int steps) {
  require_integrable(rho0, ham, ch, steps);
  if (qubits_for_dim(rho0.rows()) > 8) {
    throw DimensionError("RK4 oracle is limited to 8 qubits");
  }
  DenseOperator rho = integrate(rho0, ham, ch, steps);
  check_trace(rho0, rho, steps);
  return rho;
}

DenseOperator local_channel_evolve(const DenseOperator& rho0,
                                   const HamiltonianSpec& ham,
                                   const ChannelSpec& ch, int steps) {
  require_integrable(rho0, ham, ch, steps);
  const int n = qubits_for_dim(rho0.rows());
  if (n > kMaxOperatorQubits) {
    throw DimensionError("density matrix exceeds the operator guard");
  }
  // Single-qubit propagator, column (2*alpha + beta) is the image of
  // |alpha><beta|.
  Eigen::Matrix4cd prop;
  for (int col = 0; col < 4; ++col) {
    DenseOperator e = DenseOperator::Zero(2, 2);
    e(col / 2, col % 2) = 1.0;
    const DenseOperator img = integrate(e, ham, ch, steps);
    for (int row = 0; row < 4; ++row) prop(row, col) = img(row / 2, row % 2);
  }
  DenseOperator rho = rho0;
  const Eigen::Index dim = rho.rows();
  Eigen::Vector4cd block;
  for (int q = 0; q < n; ++q) {
    const Eigen::Index m = static_cast<Eigen::Index>(qubit_mask(n, q));
    for (Eigen::Index a = 0; a < dim; ++a) {
      if (a & m) continue;
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & m) continue;
        block << rho(a, b), rho(a, b | m), rho(a | m, b), rho(a | m, b | m);
        block = prop * block;
        rho(a, b) = block(0);
        rho(a, b | m) = block(1);
        rho(a | m, b) = block(2);
        rho(a | m, b | m) = block(3);
      }
    }
  }
  check_trace(rho0, rho, steps);
  return rho;
}

DenseVector apply_local_unitary(const DenseVector& state,
                                const Eigen::Matrix2cd& u) {
  const int n = qubits_for_dim(state.size());
  DenseVector out = state;
  const Eigen::Index dim = out.size();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index m = static_cast<Eigen::Index>(qubit_mask(n, q));
    for (Eigen::Index a = 0; a < dim; ++a) {
      if (a & m) continue;
      const Complex v0 = out(a);
      const Complex v1 = out(a | m);
      out(a) = u(0, 0) * v0 + u(0, 1) * v1;
      out(a | m) = u(1, 0) * v0 + u(1, 1) * v1;
    }
  }
  return out;
}

DenseVector trotter_evolve(const DenseVector& state,
                           const HamiltonianSpec& ham, int d) {
  ham.validate();
  if (d < 1) throw DomainError("Trotter step count must be positive");
  const int n = qubits_for_dim(state.size());
  if (n > 12) throw DimensionError("Trotter evolution is limited to 12 qubits");
  const double dt = ham.time / d;
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd rz = Eigen::Matrix2cd::Zero();
  rz(0, 0) = std::exp(-i * ham.theta_z * dt);
  rz(1, 1) = std::exp(i * ham.theta_z * dt);
  Eigen::Matrix2cd rx;
  const double c = std::cos(ham.theta_x * dt);
  const double s = std::sin(ham.theta_x * dt);
  rx << c, -i * s, -i * s, c;
  const Eigen::Matrix2cd step = rz * rx;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (int k = 0; k < d; ++k) u = step * u;
  return apply_local_unitary(state, u);
}

}  // namespace vista
