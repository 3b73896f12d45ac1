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

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vista/config.hpp"
#include "vista/errors.hpp"
#include "vista/persist.hpp"
#include "vista/protocols.hpp"

namespace vista {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vista_persist_" + name);
  fs::remove_all(p);
  return p;
}

RunConfig small_config() {
  RunConfig c;
  c.mode = ProtocolKind::VistaNoisyDephasing;
  c.n = 3;
  c.theta = 0.2;
  c.gamma = 0.05;
  c.channel = ChannelKind::Dephasing;
  c.normalization = Normalization::QuasiNormalized;
  c.seed = 5;
  c.optimizer.max_epochs = 30;
  return c;
}

TEST(Persist, NumberFormat) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(12345678.0), "12345678");
}

TEST(Persist, TraceCsvLayout) {
  const RunResult r = run_optimization(small_config());
  std::ostringstream out;
  write_trace_csv(r, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "epoch,loss,theta_hat,phi,grad_norm,shots,lr");
  int rows = 0;
  while (std::getline(in, line)) {
    int commas = 0;
    for (char ch : line) commas += ch == ',';
    EXPECT_EQ(commas, 6);
    ++rows;
  }
  EXPECT_EQ(rows, static_cast<int>(r.trace.size()));
}

TEST(Persist, EmptyTraceStillWritesFiles) {
  RunResult r;
  r.config = small_config();
  r.param_names = {"theta_hat"};
  r.status = RunStatus::Diverged;
  const fs::path dir = scratch("empty");
  persist(r, dir);
  EXPECT_EQ(slurp(dir / "trace.csv"), "epoch,loss,theta_hat,grad_norm,shots,lr\n");
  const auto j = nlohmann::json::parse(slurp(dir / "result.json"));
  EXPECT_EQ(j["status"], "diverged");
  EXPECT_TRUE(j["trace"].empty());
  fs::remove_all(dir);
}

TEST(Persist, RerunOverwritesIdentically) {
  const fs::path dir = scratch("rerun");
  persist(run_optimization(small_config()), dir);
  const std::string a = slurp(dir / "result.json") + slurp(dir / "trace.csv");
  persist(run_optimization(small_config()), dir);
  EXPECT_EQ(a, slurp(dir / "result.json") + slurp(dir / "trace.csv"));
  // The echo round-trips into the same effective config.
  EXPECT_EQ(load_config((dir / "config.json").string()), small_config());
  fs::remove_all(dir);
}

TEST(Persist, MultiparamHeader) {
  RunResult r;
  r.param_names = {"theta_hat", "theta2_hat"};
  std::ostringstream out;
  write_trace_csv(r, out);
  EXPECT_EQ(out.str(), "epoch,loss,theta_hat,theta2_hat,grad_norm,shots,lr\n");
}

TEST(Persist, SummaryAggregatesRuns) {
  std::vector<RunResult> runs(3);
  const double errs[] = {0.1, 0.3, 0.2};
  for (int i = 0; i < 3; ++i) {
    runs[i].estimates.theta_error = errs[i];
    runs[i].estimates.gamma_hat = 0.01 * (i + 1);
  }
  const SummaryRow row = summarize("gamma", 0.05, runs);
  EXPECT_EQ(row.runs, 3);
  EXPECT_NEAR(row.mean_error, 0.2, 1e-15);
  EXPECT_NEAR(row.std_error, 0.1, 1e-15);
  EXPECT_NEAR(row.median_error, 0.2, 1e-15);
  EXPECT_NEAR(*row.mean_gamma_hat, 0.02, 1e-15);
  EXPECT_FALSE(row.mean_theta2_error.has_value());
  std::ostringstream out;
  write_summary_csv({row}, out);
  EXPECT_EQ(out.str(),
            "grid_key,grid_value,runs,mean_error,std_error,median_error,mean_gamma_hat,"
            "std_gamma_hat,mean_theta2_error\ngamma,0.05,3,0.2,0.1,0.2,0.02,0.01,\n");
}

TEST(Persist, UnwritablePathFails) {
  EXPECT_THROW(write_text_file("/proc/vista_no_such_dir/x.txt", "x"), Error);
}

}  // namespace
}  // namespace vista
