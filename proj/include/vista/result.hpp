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
#include <optional>
#include <string>
#include <vector>

#include "vista/config.hpp"
#include "vista/optimize.hpp"

namespace vista {

struct Estimates {
  double theta_hat = 0.0;
  double theta_error = 0.0;
  std::optional<double> phi;
  std::optional<double> gamma_hat;
  // False when cos(phi) <= 0 and the decay inversion is undefined.
  bool gamma_hat_valid = true;
  std::optional<double> theta2_hat;
  std::optional<double> theta2_error;
};

struct StageRecord {
  int n = 0;
  int first_epoch = 0;
  int epochs = 0;
  double theta_init = 0.0;
  double theta_hat = 0.0;
  double theta_error = 0.0;
  RunStatus status = RunStatus::MaxEpochs;
  std::optional<double> probe_gradient;
  bool window_breach = false;
};

struct RunResult {
  RunConfig config;
  std::vector<std::string> param_names;
  std::vector<EpochRecord> trace;
  Estimates estimates;
  RunStatus status = RunStatus::MaxEpochs;
  std::vector<StageRecord> stages;
  std::vector<std::string> warnings;
  std::int64_t total_shots = 0;
  // Kept in memory and printed, never persisted, so that reruns produce
  // byte-identical files.
  double wall_seconds = 0.0;
};

}  // namespace vista
