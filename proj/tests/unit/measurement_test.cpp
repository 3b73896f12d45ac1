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
#include <vector>

#include "vista/core.hpp"
#include "vista/dynamics.hpp"
#include "vista/errors.hpp"
#include "vista/measurement.hpp"

namespace vista {
namespace {

ClosedFormState dephased(int n, double theta, double g) {
  return evolve_closed_form(n, {theta, 0.0, 1.0},
                            {g == 0.0 ? ChannelKind::None : ChannelKind::Dephasing, g});
}

ClosedFormState damped(int n, double theta, double g) {
  return evolve_closed_form(n, {theta, 0.0, 1.0},
                            {g == 0.0 ? ChannelKind::None : ChannelKind::AmplitudeDamping, g});
}

double stddev(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= v.size();
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

double average(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / v.size();
}

TEST(Overlap, IdenticalPureStates) {
  EXPECT_NEAR(hs_overlap_closed(dephased(3, 0.2, 0.0), dephased(3, 0.2, 0.0)).raw, 1.0,
              1e-15);
}

TEST(Overlap, DephasedPair) {
  const OverlapValue o = hs_overlap_closed(dephased(2, 0.1, 0.1), dephased(2, 0.1, 0.1));
  EXPECT_NEAR(o.raw, 0.5 * (1.0 + std::exp(-0.8)), 1e-15);
  EXPECT_NEAR(o.raw, 0.72466, 1e-5);
  EXPECT_NEAR(o.raw, trace_product(to_dense(dephased(2, 0.1, 0.1)),
                                   to_dense(dephased(2, 0.1, 0.1))),
              1e-12);
  EXPECT_NEAR(o.circuit_purity, 0.5 * (1.0 + std::exp(-0.8)), 1e-15);
}

TEST(Overlap, PureVersusAmpDamp) {
  const ClosedFormState probe = damped(3, 0.0, 0.2);
  const ClosedFormState pure = dephased(3, 0.0, 0.0);
  const double expected = 0.25 + 0.25 * std::pow(1.0 - std::exp(-0.2), 3) +
                          0.25 * std::exp(-0.6) + 0.5 * std::exp(-0.3);
  EXPECT_NEAR(hs_overlap_closed(probe, pure).raw, expected, 1e-14);
  EXPECT_NEAR(trace_product(to_dense(probe), to_dense(pure)), expected, 1e-12);
}

TEST(Overlap, AgreesWithDenseOnGrid) {
  const double thetas[] = {0.0, 0.05, 0.23};
  const double gammas[] = {0.0, 0.01, 0.1, 0.2};
  for (int n = 1; n <= 8; ++n) {
    for (double t : thetas) {
      for (double g : gammas) {
        for (double gc : gammas) {
          const ClosedFormState pairs[][2] = {
              {dephased(n, t, g), dephased(n, t + 0.03, gc)},
              {damped(n, t, g), damped(n, t - 0.02, gc)},
              {damped(n, t, g), dephased(n, t + 0.01, 0.0)},
          };
          for (const auto& p : pairs) {
            const OverlapValue o = hs_overlap_closed(p[0], p[1]);
            const DenseOperator a = to_dense(p[0]);
            const DenseOperator b = to_dense(p[1]);
            ASSERT_NEAR(o.raw, trace_product(a, b), 1e-10) << n << " " << t << " " << g;
            ASSERT_NEAR(o.circuit_purity, purity(b), 1e-10);
          }
        }
      }
    }
  }
}

TEST(Overlap, IncompatibleFamilies) {
  EXPECT_THROW(hs_overlap_closed(dephased(3, 0.1, 0.1), damped(3, 0.1, 0.1)),
               UnsupportedError);
  EXPECT_THROW(hs_overlap_closed(dephased(3, 0.1, 0.1), dephased(4, 0.1, 0.1)),
               DimensionError);
}

TEST(QuasiNormalize, PureCircuitIsIdentity) {
  OverlapValue o;
  o.raw = 0.37;
  EXPECT_EQ(quasi_normalize(o), 0.37);
}

TEST(QuasiNormalize, DephasedTwins) {
  const OverlapValue o = hs_overlap_closed(dephased(10, 0.0, 0.1), dephased(10, 0.0, 0.1));
  const double e = std::exp(-4.0);
  EXPECT_NEAR(quasi_normalize(o), (1.0 + e) / std::sqrt(2.0 * (1.0 + e)), 1e-14);
}

TEST(QuasiNormalize, CanExceedOneUnderMismatchedDecay) {
  // Noisier circuit than probe: the normalized value exceeds 1 but stays
  // below 1/sqrt(purity).
  const OverlapValue o = hs_overlap_closed(dephased(2, 0.0, 0.0), dephased(2, 0.0, 0.3));
  const double q = quasi_normalize(o);
  EXPECT_LE(q, 1.0 / std::sqrt(o.circuit_purity) + 1e-12);
  OverlapValue bad = o;
  bad.circuit_purity = 0.0;
  EXPECT_THROW(quasi_normalize(bad), DomainError);
}

TEST(QuasiNormalize, MaximumAtTrueParameters) {
  const int n = 3;
  const double g = 0.05;
  const ClosedFormState probe = dephased(n, 0.0, g);
  double best = -1.0, best_dt = 1.0, best_g = -1.0;
  for (int i = -50; i <= 50; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double dt = i * 1e-3;
      const double gc = j * 1e-3;
      const double q = quasi_normalize(hs_overlap_closed(probe, dephased(n, dt, gc)));
      if (q > best) {
        best = q;
        best_dt = dt;
        best_g = gc;
      }
    }
  }
  EXPECT_NEAR(best_dt, 0.0, 1e-12);
  EXPECT_NEAR(best_g, g, 1e-12);
}

TEST(QuasiNormalize, PeriodicInThetaOffset) {
  const int n = 5;
  const ClosedFormState probe = dephased(n, 0.1, 0.02);
  const double period = std::acos(-1.0) / n;
  for (double dt : {0.0, 0.07, 0.2}) {
    const double a = quasi_normalize(hs_overlap_closed(probe, dephased(n, 0.1 + dt, 0.02)));
    const double b =
        quasi_normalize(hs_overlap_closed(probe, dephased(n, 0.1 + dt + period, 0.02)));
    EXPECT_NEAR(a, b, 1e-12);
  }
}

TEST(SwapTest, PerfectOverlapIsExact) {
  OverlapValue o;
  o.raw = 1.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ShotSampler s(seed, 1000);
    EXPECT_EQ(swap_test_sample(o, s), 1.0);
  }
}

TEST(SwapTest, StandardDeviationAtZero) {
  OverlapValue o;
  o.raw = 0.0;
  std::vector<double> t;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    ShotSampler s(seed, 10000);
    t.push_back(swap_test_sample(o, s));
  }
  EXPECT_NEAR(stddev(t), 0.01, 0.0015);
}

TEST(SwapTest, UnbiasedAtHalf) {
  OverlapValue o;
  o.raw = 0.5;
  std::vector<double> t;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    ShotSampler s(seed + 5000, 10000);
    t.push_back(swap_test_sample(o, s));
  }
  EXPECT_NEAR(average(t), 0.5, 3.0 * 0.00866 / std::sqrt(1000.0));
}

TEST(SwapTest, ReproducibleAndForked) {
  OverlapValue o;
  o.raw = 0.4;
  ShotSampler a(99, 5000), b(99, 5000);
  EXPECT_EQ(swap_test_sample(o, a), swap_test_sample(o, b));
  const ShotSampler base(99, 5000);
  ShotSampler f1 = base.fork({1}), f2 = base.fork({1}), f3 = base.fork({2});
  const double x1 = swap_test_sample(o, f1);
  EXPECT_EQ(x1, swap_test_sample(o, f2));
  EXPECT_NE(x1, swap_test_sample(o, f3));
}

TEST(Loss, IdenticalPureStatesZero) {
  const OverlapValue o = hs_overlap_closed(dephased(4, 0.3, 0.0), dephased(4, 0.3, 0.0));
  ShotSampler s(3, 100);
  EXPECT_EQ(loss(o, s, Normalization::Plain), 0.0);
  EXPECT_EQ(exact_loss(o, Normalization::Plain), 0.0);
}

TEST(Loss, ExactPlainAndQuasiNormalized) {
  const OverlapValue o = hs_overlap_closed(dephased(2, 0.1, 0.1), dephased(2, 0.1, 0.1));
  EXPECT_NEAR(exact_loss(o, Normalization::Plain), 1.0 - 0.5 * (1.0 + std::exp(-0.8)),
              1e-15);
  EXPECT_NEAR(exact_loss(o, Normalization::QuasiNormalized),
              1.0 - std::sqrt(0.5 * (1.0 + std::exp(-0.8))), 1e-14);
}

TEST(Parity, Examples) {
  EXPECT_EQ(parity_probability(3, 0.23, 0.11, 0.0), 1.0);
  EXPECT_NEAR(parity_probability(3, 0.23, 0.11, 1.0),
              0.5 * (1.0 + std::exp(-0.66) * std::cos(1.38)), 1e-15);
  EXPECT_NEAR(parity_probability(3, 0.23, 1e6, 1.0), 0.5, 1e-15);
}

TEST(Parity, MatchesDenseStabilizerExpectation) {
  const ClosedFormState s = dephased(3, 0.23, 0.11);
  const DenseOperator rho = to_dense(s);
  const double x = trace_product(rho, tensor_power(3, Axis::X));
  EXPECT_NEAR(0.5 * (1.0 + x), parity_probability(3, 0.23, 0.11, 1.0), 1e-12);
}

TEST(Parity, Sampling) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ShotSampler s(seed, 2500);
    EXPECT_EQ(parity_sample(1.0, s), 1.0);
  }
  std::vector<double> v;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    ShotSampler s(seed, 2500);
    v.push_back(parity_sample(0.5, s));
  }
  EXPECT_NEAR(stddev(v), 0.01, 0.001);
  ShotSampler a(17, 2500), b(17, 2500);
  EXPECT_EQ(parity_sample(0.3, a), parity_sample(0.3, b));
}

}  // namespace
}  // namespace vista
