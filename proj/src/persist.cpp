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

#include "vista/persist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vista/errors.hpp"

namespace vista {

using nlohmann::json;

namespace {

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Sample standard deviation; zero for fewer than two values.
double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json result_to_json(const RunResult& r) {
  json j;
  j["config"] = config_to_json(r.config);
  j["status"] = to_string(r.status);
  j["total_shots"] = r.total_shots;
  j["param_names"] = r.param_names;

  const Estimates& e = r.estimates;
  j["estimates"] = {{"theta_hat", e.theta_hat},
                    {"theta_error", e.theta_error},
                    {"phi", optional_json(e.phi)},
                    {"gamma_hat", optional_json(e.gamma_hat)},
                    {"gamma_hat_valid", e.gamma_hat_valid},
                    {"theta2_hat", optional_json(e.theta2_hat)},
                    {"theta2_error", optional_json(e.theta2_error)}};

  json trace = json::array();
  for (const EpochRecord& rec : r.trace) {
    json params = json::object();
    for (std::size_t i = 0; i < r.param_names.size() && i < rec.params.size(); ++i) {
      params[r.param_names[i]] = rec.params[i];
    }
    trace.push_back({{"epoch", rec.epoch},
                     {"loss", rec.loss},
                     {"params", params},
                     {"grad_norm", rec.grad_norm},
                     {"shots", rec.shots},
                     {"lr", rec.lr}});
  }
  j["trace"] = trace;

  json stages = json::array();
  for (const StageRecord& s : r.stages) {
    stages.push_back({{"n", s.n},
                      {"first_epoch", s.first_epoch},
                      {"epochs", s.epochs},
                      {"theta_init", s.theta_init},
                      {"theta_hat", s.theta_hat},
                      {"theta_error", s.theta_error},
                      {"status", to_string(s.status)},
                      {"probe_gradient", optional_json(s.probe_gradient)},
                      {"window_breach", s.window_breach}});
  }
  j["stages"] = stages;
  j["warnings"] = r.warnings;
  return j;
}

void write_trace_csv(const RunResult& r, std::ostream& out) {
  out << "epoch,loss";
  for (const std::string& name : r.param_names) out << ',' << name;
  out << ",grad_norm,shots,lr\n";
  for (const EpochRecord& rec : r.trace) {
    out << rec.epoch << ',' << format_number(rec.loss);
    for (std::size_t i = 0; i < r.param_names.size(); ++i) {
      out << ',' << (i < rec.params.size() ? format_number(rec.params[i]) : "");
    }
    out << ',' << format_number(rec.grad_norm) << ',' << rec.shots << ','
        << format_number(rec.lr) << '\n';
  }
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw Error("failed writing " + path.string());
}

void persist(const RunResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  write_text_file(dir / "result.json", result_to_json(r).dump(2) + "\n");
  write_text_file(dir / "config.json", config_to_json(r.config).dump(2) + "\n");
  std::ostringstream csv;
  write_trace_csv(r, csv);
  write_text_file(dir / "trace.csv", csv.str());
}

SummaryRow summarize(const std::string& key, double value,
                     const std::vector<RunResult>& runs) {
  SummaryRow row;
  row.grid_key = key;
  row.grid_value = value;
  row.runs = static_cast<int>(runs.size());
  std::vector<double> err, gam, err2;
  for (const RunResult& r : runs) {
    err.push_back(r.estimates.theta_error);
    if (r.estimates.gamma_hat) gam.push_back(*r.estimates.gamma_hat);
    if (r.estimates.theta2_error) err2.push_back(*r.estimates.theta2_error);
  }
  row.mean_error = mean_of(err);
  row.std_error = std_of(err);
  row.median_error = median_of(err);
  if (!gam.empty()) {
    row.mean_gamma_hat = mean_of(gam);
    row.std_gamma_hat = std_of(gam);
  }
  if (!err2.empty()) row.mean_theta2_error = mean_of(err2);
  return row;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "grid_key,grid_value,runs,mean_error,std_error,median_error,"
         "mean_gamma_hat,std_gamma_hat,mean_theta2_error\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
  };
  for (const SummaryRow& r : rows) {
    out << r.grid_key << ',' << format_number(r.grid_value) << ',' << r.runs
        << ',' << format_number(r.mean_error) << ','
        << format_number(r.std_error) << ',' << format_number(r.median_error)
        << ',' << opt(r.mean_gamma_hat) << ',' << opt(r.std_gamma_hat) << ','
        << opt(r.mean_theta2_error) << '\n';
  }
}

}  // namespace vista
