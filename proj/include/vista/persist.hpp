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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vista/result.hpp"

namespace vista {

/// Decimal with 12 significant digits, as used in every CSV file.
std::string format_number(double x);

nlohmann::json result_to_json(const RunResult& r);

/// Header epoch,loss,<parameter names>,grad_norm,shots,lr.
void write_trace_csv(const RunResult& r, std::ostream& out);

/// Writes result.json, trace.csv and config.json (effective config echo)
/// into `dir`, creating it if needed.
void persist(const RunResult& r, const std::filesystem::path& dir);

struct SummaryRow {
  std::string grid_key;    // e.g. "n" or "gamma"
  double grid_value = 0.0;
  int runs = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  double median_error = 0.0;
  std::optional<double> mean_gamma_hat;
  std::optional<double> std_gamma_hat;
  std::optional<double> mean_theta2_error;
};

/// Aggregates replicas of one grid point.
SummaryRow summarize(const std::string& key, double value,
                     const std::vector<RunResult>& runs);

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace vista
