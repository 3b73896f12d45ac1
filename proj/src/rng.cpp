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

#include "vista/rng.hpp"

#include <cmath>

#include "vista/errors.hpp"

namespace vista {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> labels) {
  std::uint64_t state = master;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t label : labels) {
    state = out ^ (label * 0xd1b54a32d192ed03ULL);
    out = splitmix64(state);
  }
  return out;
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// Stirling series correction log(k!) - [(k+1/2)log(k+1) - (k+1) + log(2pi)/2].
double stirling_correction(std::int64_t k) {
  static constexpr double kTable[10] = {
      0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
      0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
      0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
      0.008330563433362871};
  if (k < 10) return kTable[k];
  const double kp1 = static_cast<double>(k + 1);
  const double kp1sq = kp1 * kp1;
  return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / kp1sq) / kp1sq) / kp1;
}

std::int64_t binomial_inversion(Xoshiro256& rng, std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = static_cast<double>(n + 1) * s;
  while (true) {
    double r = std::pow(q, static_cast<double>(n));
    double u = rng.uniform();
    std::int64_t x = 0;
    bool accepted = true;
    while (u > r) {
      u -= r;
      ++x;
      if (x > n) {
        // Accumulated rounding pushed u past the total mass; redraw.
        accepted = false;
        break;
      }
      r *= (a / static_cast<double>(x) - s);
    }
    if (accepted) return x;
  }
}

// W. Hormann, "The generation of binomial random variates",
// J. Statist. Comput. Simul. 46 (1993). Requires n*p >= 10 and p <= 1/2.
std::int64_t binomial_btrd(Xoshiro256& rng, std::int64_t n, double p) {
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  const double spq = std::sqrt(nd * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = nd * p + 0.5;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double vr = 0.92 - 4.2 / b;
  const double urvr = 0.86 * vr;
  const std::int64_t m = static_cast<std::int64_t>(std::floor((nd + 1) * p));
  const double r = p / q;
  const double nr = (nd + 1) * r;
  const double npq = nd * p * q;

  while (true) {
    double v = rng.uniform();
    double u;
    if (v <= urvr) {
      u = v / vr - 0.43;
      return static_cast<std::int64_t>(
          std::floor((2 * a / (0.5 - std::abs(u)) + b) * u + c));
    }
    if (v >= vr) {
      u = rng.uniform() - 0.5;
    } else {
      u = v / vr - 0.93;
      u = std::copysign(0.5, u) - u;
      v = rng.uniform() * vr;
    }
    const double us = 0.5 - std::abs(u);
    const double kd = std::floor((2 * a / us + b) * u + c);
    if (kd < 0 || kd > nd) continue;
    const std::int64_t k = static_cast<std::int64_t>(kd);
    v = v * alpha / (a / (us * us) + b);
    const std::int64_t km = k > m ? k - m : m - k;

    if (km <= 15) {
      // Recursive evaluation of f(k)/f(m).
      double f = 1.0;
      if (m < k) {
        for (std::int64_t i = m + 1; i <= k; ++i) {
          f *= nr / static_cast<double>(i) - r;
        }
      } else if (m > k) {
        for (std::int64_t i = k + 1; i <= m; ++i) {
          v *= nr / static_cast<double>(i) - r;
        }
      }
      if (v <= f) return k;
      continue;
    }

    // Squeeze on log(v).
    v = std::log(v);
    const double kmd = static_cast<double>(km);
    const double rho =
        (kmd / npq) * (((kmd / 3.0 + 0.625) * kmd + 1.0 / 6.0) / npq + 0.5);
    const double t = -kmd * kmd / (2 * npq);
    if (v < t - rho) return k;
    if (v > t + rho) continue;

    const double nm = nd - static_cast<double>(m) + 1;
    const double h = (static_cast<double>(m) + 0.5) *
                         std::log((static_cast<double>(m) + 1) / (r * nm)) +
                     stirling_correction(m) + stirling_correction(n - m);
    const double nk = nd - kd + 1;
    if (v <= h + (nd + 1) * std::log(nm / nk) +
                 (kd + 0.5) * std::log(nk * r / (kd + 1)) -
                 stirling_correction(k) - stirling_correction(n - k)) {
      return k;
    }
  }
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

Xoshiro256::result_type Xoshiro256::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::int64_t sample_binomial(Xoshiro256& rng, std::int64_t trials, double p) {
  if (trials < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw DomainError("binomial parameters out of range");
  }
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  if (p > 0.5) return trials - sample_binomial(rng, trials, 1.0 - p);
  if (static_cast<double>(trials) * p < 10.0) {
    return binomial_inversion(rng, trials, p);
  }
  return binomial_btrd(rng, trials, p);
}

}  // namespace vista
