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

#include "vista/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "vista/dynamics.hpp"
#include "vista/errors.hpp"
#include "vista/protocols.hpp"
#include "vista/rng.hpp"

namespace vista {

int worker_count() {
  if (const char* env = std::getenv("VISTA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

RunConfig replica_config(const RunConfig& base, int replica) {
  RunConfig c = base;
  c.seed = derive_seed(base.seed,
                       {kStreamReplica, static_cast<std::uint64_t>(replica)});
  return c;
}

std::vector<RunResult> run_replicas(const RunConfig& base, int replicas) {
  std::vector<RunResult> out(static_cast<std::size_t>(replicas));
  parallel_for(out.size(), [&](std::size_t i) {
    out[i] = run_optimization(replica_config(base, static_cast<int>(i)));
  });
  return out;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse '" + s + "' as a number");
  }
  if (used != s.size()) throw ConfigError("cannot parse '" + s + "' as a number");
  return v;
}

}  // namespace

std::vector<double> parse_real_range(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:stop:step");
    const double a = to_real(parts[0]);
    const double b = to_real(parts[1]);
    const double s = to_real(parts[2]);
    if (!(s > 0.0) || b < a) throw ConfigError("range '" + text + "' is empty");
    const int count = static_cast<int>(std::floor((b - a) / s + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) out.push_back(a + i * s);
    return out;
  }
  for (const auto& p : split(text, ',')) out.push_back(to_real(p));
  if (out.empty()) throw ConfigError("empty value list");
  return out;
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_real_range(text)) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) throw ConfigError("'" + text + "' is not integral");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

RunConfig scaling_config(double theta, double gamma, std::int64_t shots,
                         std::uint64_t seed) {
  RunConfig c;
  c.mode = ProtocolKind::VistaPure;
  c.theta = theta;
  c.gamma = gamma;
  c.channel = gamma > 0.0 ? ChannelKind::Dephasing : ChannelKind::None;
  c.normalization = Normalization::Plain;
  c.seed = seed;
  c.shots.start = shots;
  c.shots.end = shots;
  c.shots.profile = ShotProfile::Constant;
  return c;
}

ScalingReport scaling_experiment(const RunConfig& base,
                                 const std::vector<int>& n_grid, int replicas) {
  ScalingReport rep;
  rep.n_grid = n_grid;
  std::vector<RunResult> all(n_grid.size() * static_cast<std::size_t>(replicas));
  parallel_for(all.size(), [&](std::size_t k) {
    RunConfig c = base;
    c.n = n_grid[k / replicas];
    all[k] = run_optimization(replica_config(c, static_cast<int>(k % replicas)));
  });
  std::vector<double> means;
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    std::vector<RunResult> runs(all.begin() + g * replicas,
                                all.begin() + (g + 1) * replicas);
    rep.rows.push_back(summarize("n", n_grid[g], runs));
    means.push_back(rep.rows.back().mean_error);
  }
  rep.fit = fit_scaling(means, n_grid);
  return rep;
}

CalibrationReport calibration_experiment(const RunConfig& base,
                                         const std::vector<double>& gammas,
                                         int replicas) {
  if (replicas < 2) throw ConfigError("calibration needs two or more replicas");
  CalibrationReport rep;
  rep.gammas = gammas;
  std::vector<RunResult> all(gammas.size() * static_cast<std::size_t>(replicas));
  parallel_for(all.size(), [&](std::size_t k) {
    RunConfig c = base;
    c.gamma = gammas[k / replicas];
    all[k] = run_optimization(replica_config(c, static_cast<int>(k % replicas)));
  });
  auto hat = [&](std::size_t g, int r) {
    const auto& e = all[g * replicas + r].estimates;
    if (!e.gamma_hat) throw CalibrationError("run produced no decay estimate");
    return *e.gamma_hat;
  };
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    double s = 0.0;
    int m = 0;
    for (int r = 0; r < replicas; r += 2, ++m) s += hat(g, r);
    rep.mean_gamma_hat.push_back(s / m);
  }
  rep.monotone = true;
  for (std::size_t g = 1; g < gammas.size(); ++g) {
    if (!(rep.mean_gamma_hat[g] > rep.mean_gamma_hat[g - 1])) rep.monotone = false;
  }
  const GammaCalibration map = GammaCalibration::fit(gammas, rep.mean_gamma_hat);
  rep.knots_hat = map.knots_hat();
  rep.knots_true = map.knots_true();
  double raw = 0.0, cal = 0.0;
  int count = 0;
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    for (int r = 1; r < replicas; r += 2, ++count) {
      raw += std::abs(hat(g, r) - gammas[g]);
      cal += std::abs(map.apply(hat(g, r)) - gammas[g]);
    }
  }
  rep.raw_error = raw / count;
  rep.calibrated_error = cal / count;
  return rep;
}

double oracle_deviation(int n, double theta, double gamma, ChannelKind channel,
                        int steps) {
  const HamiltonianSpec ham{theta, 0.0, 1.0};
  const ChannelSpec ch{channel, gamma};
  const DenseOperator closed = to_dense(evolve_closed_form(n, ham, ch));
  const DenseOperator numeric =
      lindblad_rk4_oracle(outer(ghz_vector(n)), ham, ch, steps);
  return max_abs_diff(closed, numeric);
}

}  // namespace vista
