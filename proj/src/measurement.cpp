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

#include "vista/measurement.hpp"

#include <cmath>

#include "vista/errors.hpp"

namespace vista {

namespace {

bool is_ampdamp(const ClosedFormState& s) {
  return s.family == StateFamily::AmpDampGhz;
}

bool is_dephased(const ClosedFormState& s) {
  return s.family == StateFamily::DephasedGhz;
}

// Both states are X-states, so only diagonals and the corner coherence
// contribute: Tr = sum_x p(x) q(x) + 2 Re(c_p conj(c_q)).
double corner_term(const ClosedFormState& a, const ClosedFormState& b) {
  return 2.0 * std::real(a.coherence() * std::conj(b.coherence()));
}

double check_probability(double p) {
  if (p < 0.0 && p > -1e-12) return 0.0;
  if (p > 1.0 && p < 1.0 + 1e-12) return 1.0;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability outside [0, 1]");
  }
  return p;
}

}  // namespace

ShotSampler::ShotSampler(std::uint64_t seed, std::int64_t shots)
    : seed_(seed), shots_(shots), rng_(seed) {
  if (shots < 1) throw DomainError("shot count must be at least 1");
}

void ShotSampler::set_shots(std::int64_t shots) {
  if (shots < 1) throw DomainError("shot count must be at least 1");
  shots_ = shots;
}

std::int64_t ShotSampler::draw(double p) {
  return sample_binomial(rng_, shots_, p);
}

ShotSampler ShotSampler::fork(
    std::initializer_list<std::uint64_t> labels) const {
  return ShotSampler(derive_seed(seed_, labels), shots_);
}

OverlapValue hs_overlap_closed(const ClosedFormState& probe,
                               const ClosedFormState& circuit) {
  if (probe.n != circuit.n) {
    throw DimensionError("overlap of states with different qubit counts");
  }
  const int n = probe.n;
  OverlapValue o;
  o.circuit_purity = circuit.purity();
  if (is_ampdamp(probe) && is_dephased(circuit)) {
    throw UnsupportedError("no closed overlap for damped probe vs dephased circuit");
  }
  if (is_dephased(probe) && is_ampdamp(circuit)) {
    throw UnsupportedError("no closed overlap for dephased probe vs damped circuit");
  }
  if (!is_ampdamp(probe) && !is_ampdamp(circuit)) {
    o.raw = 0.5 + corner_term(probe, circuit);
  } else {
    // At least one side is damped; an undamped side is the a = 1 limit.
    const double a = std::exp(-probe.decay * is_ampdamp(probe));
    const double b = std::exp(-circuit.decay * is_ampdamp(circuit));
    o.raw = 0.25 + 0.25 * std::pow(1.0 - a, n) + 0.25 * std::pow(1.0 - b, n) +
            0.25 * std::pow(a * b + (1.0 - a) * (1.0 - b), n) +
            corner_term(probe, circuit);
  }
  o.quasi_normalized = o.raw / std::sqrt(o.circuit_purity);
  return o;
}

OverlapValue overlap_with_pure(const DenseOperator& probe,
                               const DenseVector& circuit) {
  if (probe.rows() != circuit.size() || probe.cols() != circuit.size()) {
    throw DimensionError("probe and circuit dimensions differ");
  }
  const Complex v = circuit.dot(probe * circuit);
  if (std::abs(v.imag()) > 1e-8) {
    throw NumericalConsistencyError("overlap has an imaginary part");
  }
  OverlapValue o;
  o.raw = v.real();
  o.circuit_purity = 1.0;
  o.quasi_normalized = o.raw;
  return o;
}

double quasi_normalize(const OverlapValue& o) {
  if (!(o.circuit_purity > 0.0)) {
    throw DomainError("circuit purity must be positive");
  }
  return o.raw / std::sqrt(o.circuit_purity);
}

double swap_test_sample(const OverlapValue& o, ShotSampler& s) {
  const double p = check_probability(0.5 * (1.0 + o.raw));
  const std::int64_t k = s.draw(p);
  return 2.0 * static_cast<double>(k) / static_cast<double>(s.shots()) - 1.0;
}

double loss(const OverlapValue& o, ShotSampler& s, Normalization mode) {
  const double t = swap_test_sample(o, s);
  if (mode == Normalization::Plain) return 1.0 - t;
  return 1.0 - t / std::sqrt(o.circuit_purity);
}

double exact_loss(const OverlapValue& o, Normalization mode) {
  if (mode == Normalization::Plain) return 1.0 - o.raw;
  return 1.0 - quasi_normalize(o);
}

double parity_probability(int n, double theta, double gamma, double t) {
  if (!(t >= 0.0)) throw DomainError("time must be non-negative");
  if (!(gamma >= 0.0)) throw DomainError("rate must be non-negative");
  return 0.5 * (1.0 + std::exp(-2.0 * n * gamma * t) *
                          std::cos(2.0 * n * theta * t));
}

double parity_sample(double p, ShotSampler& s) {
  const std::int64_t k = s.draw(check_probability(p));
  return static_cast<double>(k) / static_cast<double>(s.shots());
}

}  // namespace vista
