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
#include <functional>
#include <string>
#include <vector>

#include "vista/analysis.hpp"
#include "vista/config.hpp"
#include "vista/persist.hpp"
#include "vista/result.hpp"

namespace vista {

/// Worker count from VISTA_THREADS, else the hardware concurrency.
int worker_count();

/// Runs fn(0..count-1) on a pool of worker_count() threads. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Same config on the replica's own master seed.
RunConfig replica_config(const RunConfig& base, int replica);

std::vector<RunResult> run_replicas(const RunConfig& base, int replicas);

/// "2:12:2" (inclusive), "2,4,8" or a single value.
std::vector<int> parse_int_range(const std::string& text);
std::vector<double> parse_real_range(const std::string& text);

/// Pure-ansatz runs on a dephased probe at constant shots, as used for the
/// scaling law.
RunConfig scaling_config(double theta, double gamma, std::int64_t shots,
                         std::uint64_t seed);

struct ScalingReport {
  std::vector<int> n_grid;
  std::vector<SummaryRow> rows;
  ScalingFit fit;
};

ScalingReport scaling_experiment(const RunConfig& base,
                                 const std::vector<int>& n_grid, int replicas);

struct CalibrationReport {
  std::vector<double> gammas;
  std::vector<double> mean_gamma_hat;  // fit half
  bool monotone = false;
  double raw_error = 0.0;         // held-out mean |gamma_hat - gamma|
  double calibrated_error = 0.0;  // held-out mean |map(gamma_hat) - gamma|
  std::vector<double> knots_hat;
  std::vector<double> knots_true;
};

/// Even replicas build the calibration map, odd replicas are held out.
CalibrationReport calibration_experiment(const RunConfig& base,
                                         const std::vector<double>& gammas,
                                         int replicas);

/// Max-abs deviation between the closed-form state and the RK4 oracle.
double oracle_deviation(int n, double theta, double gamma, ChannelKind channel,
                        int steps);

}  // namespace vista
