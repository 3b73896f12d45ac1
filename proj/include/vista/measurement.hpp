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
#include <initializer_list>
#include <optional>

#include "vista/core.hpp"
#include "vista/dynamics.hpp"
#include "vista/rng.hpp"

namespace vista {

struct OverlapValue {
  double raw = 0.0;  // Tr(rho sigma)
  std::optional<double> quasi_normalized;
  double circuit_purity = 1.0;
};

enum class Normalization { Plain, QuasiNormalized };

/// Seeded binomial model of repeated two-outcome measurements.
class ShotSampler {
 public:
  ShotSampler(std::uint64_t seed, std::int64_t shots);

  std::uint64_t seed() const { return seed_; }
  std::int64_t shots() const { return shots_; }
  void set_shots(std::int64_t shots);

  /// Number of successes out of shots() trials.
  std::int64_t draw(double p);

  /// Independent sampler on a sub-stream of this sampler's seed.
  ShotSampler fork(std::initializer_list<std::uint64_t> labels) const;

 private:
  std::uint64_t seed_;
  std::int64_t shots_;
  Xoshiro256 rng_;
};

/// Closed-form Tr(probe * circuit). Supported pairs: pure or dephased with
/// pure or dephased, and amplitude-damped with amplitude-damped or pure.
OverlapValue hs_overlap_closed(const ClosedFormState& probe,
                               const ClosedFormState& circuit);

/// <psi|rho|psi> for a pure circuit state; circuit purity is 1.
OverlapValue overlap_with_pure(const DenseOperator& probe,
                               const DenseVector& circuit);

double quasi_normalize(const OverlapValue& o);

/// Swap test estimate 2k/nu - 1 with k ~ Binomial(nu, (1 + raw)/2).
double swap_test_sample(const OverlapValue& o, ShotSampler& s);

double loss(const OverlapValue& o, ShotSampler& s, Normalization mode);

/// Infinite-shot limit of loss().
double exact_loss(const OverlapValue& o, Normalization mode);

/// P(+1) of the X-stabilizer on a dephased GHZ probe at time t.
double parity_probability(int n, double theta, double gamma, double t);

double parity_sample(double p, ShotSampler& s);

}  // namespace vista
