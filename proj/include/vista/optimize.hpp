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

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "vista/measurement.hpp"

namespace vista {

// Theta covers every Hamiltonian phase parameter (theta, theta_1, theta_2).
enum class ParamKind { Theta, Phi };

inline constexpr double kPhiMax = std::numbers::pi / 2 - 1e-6;

struct ParamVector {
  std::vector<double> values;
  std::vector<ParamKind> kinds;
  std::vector<std::string> names;

  void add(std::string name, ParamKind kind, double value);
  std::size_t size() const { return values.size(); }
  /// Keeps every circuit angle inside [0, kPhiMax].
  void clamp();
};

struct AdamConfig {
  double lr = 0.05;
  double lr_phi = 0.02;
  double decay = 0.995;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int max_epochs = 400;
  double tol = 1e-8;
  int window = 20;
  // Phase learning rates are divided by n, as the loss period is pi/n.
  bool scale_theta_lr = true;
  // Circuit angles stay frozen for this many epochs while theta settles.
  int phi_warmup = 25;
  double wall_clock_seconds = 600.0;
  double divergence_guard = 100.0;

  void validate() const;
  bool operator==(const AdamConfig&) const = default;
};

struct OptimizerState {
  AdamConfig config;
  int n = 1;
  std::vector<double> m;
  std::vector<double> v;
  int t = 0;

  OptimizerState(const AdamConfig& cfg, std::size_t params, int qubits);

  /// lr0 * decay^t before any per-kind scaling.
  double base_lr() const;
  double learning_rate(ParamKind kind) const;
};

void adam_step(OptimizerState& state, ParamVector& p,
               const std::vector<double>& g);

enum class ShotProfile { Constant, Linear, Geometric };

struct ShotSchedule {
  std::int64_t start = 10000;
  std::int64_t end = 40000;
  ShotProfile profile = ShotProfile::Geometric;
  bool exact = false;  // infinite-shot limit, no sampling

  void validate() const;
  std::int64_t shots_at(int epoch, int max_epochs) const;
  bool operator==(const ShotSchedule&) const = default;
};

enum class GradientMethod { CentralDifference, ParameterShift };

struct GradientConfig {
  GradientMethod method = GradientMethod::CentralDifference;
  std::optional<double> h_theta;  // defaults to pi / (8 n)
  double h_phi = 0.05;
  bool common_random_numbers = false;

  void validate() const;
  double step_for(ParamKind kind, int n) const;
  bool operator==(const GradientConfig&) const = default;
};

/// Maps parameters to the exact overlap of probe and circuit.
class LossModel {
 public:
  virtual ~LossModel() = default;
  virtual int qubits() const = 0;
  virtual Normalization normalization() const = 0;
  virtual OverlapValue overlap(const std::vector<double>& params) const = 0;
  /// True if parameter `index` is a GHZ phase with a cos(2 n theta) loss,
  /// which admits the two-point shift rule.
  virtual bool phase_parameter(std::size_t /*index*/) const { return false; }
};

/// One loss evaluation: sampled if `s` is non-null, exact otherwise.
double evaluate_loss(const LossModel& model, const std::vector<double>& params,
                     ShotSampler* s);

/// Gradient of the loss. Parameters with active[i] == false get 0 and cost
/// no shots. Pass s == nullptr for the exact loss.
std::vector<double> estimate_gradient(const ParamVector& p,
                                      const LossModel& model, ShotSampler* s,
                                      const GradientConfig& cfg,
                                      const std::vector<bool>& active = {});

enum class RunStatus { Converged, MaxEpochs, Diverged, CascadeFailed };

std::string to_string(RunStatus status);

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  std::vector<double> params;  // values before this epoch's update
  double grad_norm = 0.0;
  std::int64_t shots = 0;  // 0 in exact mode
  double lr = 0.0;
};

struct OptimizationSettings {
  AdamConfig adam;
  ShotSchedule shots;
  GradientConfig gradient;
};

struct OptimizationOutcome {
  std::vector<EpochRecord> trace;
  ParamVector final_params;
  RunStatus status = RunStatus::MaxEpochs;
  std::int64_t total_shots = 0;
  double wall_seconds = 0.0;
};

/// ADAM on the (sampled) loss until convergence, max epochs, divergence or
/// the wall-clock budget. Every random draw comes from sub-streams of `seed`.
OptimizationOutcome minimize(const LossModel& model, ParamVector init,
                             const OptimizationSettings& settings,
                             std::uint64_t seed);

}  // namespace vista
