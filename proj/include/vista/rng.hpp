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

#include <array>
#include <cstdint>
#include <initializer_list>

namespace vista {

/// SplitMix64 finalizer. Used for seeding and for stream derivation.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives an independent 64-bit seed from a master seed and a label path,
/// e.g. derive_seed(master, {kStreamGradient, epoch, parameter}).
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> labels);

// Fixed stream labels. Changing any of these changes every seeded result.
inline constexpr std::uint64_t kStreamInit = 0x696e6974;      // "init"
inline constexpr std::uint64_t kStreamGradient = 0x67726164;  // "grad"
inline constexpr std::uint64_t kStreamTrace = 0x74726163;     // "trac"
inline constexpr std::uint64_t kStreamReplica = 0x7265706c;   // "repl"
inline constexpr std::uint64_t kStreamProbe = 0x70726f62;     // "prob"
inline constexpr std::uint64_t kStreamBaseline = 0x6261736c;  // "basl"
inline constexpr std::uint64_t kStreamStage = 0x73746167;     // "stag"

/// xoshiro256** 1.0 (Blackman & Vigna). Bit-identical on every platform.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Binomial(trials, p) draw using inversion for small means and Hormann's
/// BTRD rejection sampler otherwise. Never delegates to <random>
/// distributions, whose output differs between standard libraries.
std::int64_t sample_binomial(Xoshiro256& rng, std::int64_t trials, double p);

}  // namespace vista
