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

#include <nlohmann/json.hpp>

#include "vista/dynamics.hpp"
#include "vista/measurement.hpp"
#include "vista/optimize.hpp"

namespace vista {

enum class ProtocolKind {
  VistaPure,
  VistaNoisyDephasing,
  VistaNoisyAmpDamp,
  VistaMultiparam,
  Cascade,
  BaselineFft
};

struct InitConfig {
  std::optional<double> theta;        // absolute starting guess
  std::optional<double> delta_theta;  // offset from the true theta
  double phi = 0.1;
  std::optional<double> theta2;
  std::optional<double> delta_theta2;

  bool operator==(const InitConfig&) const = default;
};

struct CascadeConfig {
  std::vector<int> n_sequence{2, 4, 8};
  double g_min = 1e-4;
  int probe_evaluations = 8;
  // Optional per-stage epoch caps; empty means the optimizer default.
  std::vector<int> max_epochs;

  bool operator==(const CascadeConfig&) const = default;
};

struct BaselineSettings {
  double total_time = 1.0;
  int steps = 200;
  std::int64_t shots_per_step = 2500;

  bool operator==(const BaselineSettings&) const = default;
};

struct MultiparamConfig {
  int trotter_steps = 64;
  int rk4_steps = 2000;
  // Keep theta2 at its true value instead of learning it.
  bool fix_theta2 = false;

  bool operator==(const MultiparamConfig&) const = default;
};

struct RunConfig {
  ProtocolKind mode = ProtocolKind::VistaPure;
  int n = 1;
  double theta = 0.0;
  std::optional<double> theta2;
  double gamma = 0.0;
  ChannelKind channel = ChannelKind::None;
  Normalization normalization = Normalization::Plain;
  double time = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::string> output;

  AdamConfig optimizer;
  ShotSchedule shots;
  GradientConfig gradient;
  InitConfig init;
  CascadeConfig cascade;
  BaselineSettings baseline;
  MultiparamConfig multiparam;

  bool operator==(const RunConfig&) const = default;
};

std::string to_string(ProtocolKind kind);
std::string to_string(ChannelKind kind);
std::string to_string(Normalization kind);
std::string to_string(ShotProfile profile);
std::string to_string(GradientMethod method);

ProtocolKind protocol_from_string(const std::string& s);
ChannelKind channel_from_string(const std::string& s);

/// Parses and validates a config object. Unknown keys, wrong types and
/// out-of-domain values raise ConfigError naming the key.
RunConfig parse_config(const nlohmann::json& j);

RunConfig load_config(const std::string& path);

/// Effective config with every default spelled out; parse_config of the
/// result reproduces the input exactly.
nlohmann::json config_to_json(const RunConfig& c);

/// Consistency checks between mode, channel and the blocks.
void validate_config(const RunConfig& c);

}  // namespace vista
