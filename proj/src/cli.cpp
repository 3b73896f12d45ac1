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

#include "vista/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vista/analysis.hpp"
#include "vista/config.hpp"
#include "vista/errors.hpp"
#include "vista/experiments.hpp"
#include "vista/persist.hpp"
#include "vista/protocols.hpp"
#include "vista/rng.hpp"

namespace vista {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) { return format_number(x); }

RunConfig config_with_overrides(const std::string& path,
                                std::optional<std::uint64_t> seed,
                                const std::string& out) {
  RunConfig c = load_config(path);
  if (seed) c.seed = *seed;
  if (!out.empty()) c.output = out;
  return c;
}

fs::path output_dir(const RunConfig& c, const std::string& fallback) {
  return c.output ? fs::path(*c.output) : fs::path(fallback);
}

void print_result(const RunResult& r, std::ostream& out) {
  out << "status=" << to_string(r.status)
      << " theta_hat=" << fmt(r.estimates.theta_hat)
      << " theta_error=" << fmt(r.estimates.theta_error);
  if (r.estimates.gamma_hat) out << " gamma_hat=" << fmt(*r.estimates.gamma_hat);
  if (r.estimates.theta2_hat) {
    out << " theta2_hat=" << fmt(*r.estimates.theta2_hat)
        << " theta2_error=" << fmt(*r.estimates.theta2_error);
  }
  out << " epochs=" << r.trace.size() << " wall_seconds=" << fmt(r.wall_seconds)
      << '\n';
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

int cmd_run(const RunConfig& c, std::ostream& out) {
  const RunResult r = run_optimization(c);
  const fs::path dir = output_dir(c, "vista_out");
  persist(r, dir);
  print_result(r, out);
  out << "wrote " << dir.string() << '\n';
  return 0;
}

int cmd_sweep(RunConfig c, int seeds, const std::string& param,
              const std::string& values, std::ostream& out) {
  if (seeds < 1) throw ConfigError("--seeds must be >= 1");
  std::vector<double> grid{0.0};
  std::string key = "none";
  if (!param.empty()) {
    if (values.empty()) throw ConfigError("--param needs --values");
    if (param != "n" && param != "gamma" && param != "theta") {
      throw ConfigError("--param must be n, gamma or theta");
    }
    if (param == "n" && c.mode == ProtocolKind::Cascade) {
      throw ConfigError("cascade sweeps cannot vary n");
    }
    key = param;
    grid = parse_real_range(values);
  }
  std::vector<RunConfig> points;
  for (double v : grid) {
    RunConfig p = c;
    if (key == "n") p.n = static_cast<int>(std::lround(v));
    if (key == "gamma") {
      p.gamma = v;
      // A config written for gamma = 0 has no channel; sweeping on implies dephasing.
      if (p.channel == ChannelKind::None && v > 0.0) p.channel = ChannelKind::Dephasing;
    }
    if (key == "theta") p.theta = v;
    validate_config(p);
    points.push_back(p);
  }
  std::vector<RunResult> all(points.size() * static_cast<std::size_t>(seeds));
  parallel_for(all.size(), [&](std::size_t k) {
    all[k] = run_optimization(replica_config(points[k / seeds], static_cast<int>(k % seeds)));
  });

  std::vector<SummaryRow> rows;
  std::ostringstream runs_csv;
  runs_csv << "grid_key,grid_value,replica,seed,status,theta_hat,theta_error,"
              "gamma_hat,theta2_error\n";
  for (std::size_t g = 0; g < points.size(); ++g) {
    std::vector<RunResult> group(all.begin() + g * seeds, all.begin() + (g + 1) * seeds);
    rows.push_back(summarize(key, grid[g], group));
    for (int r = 0; r < seeds; ++r) {
      const RunResult& res = group[r];
      runs_csv << key << ',' << fmt(grid[g]) << ',' << r << ',' << res.config.seed
               << ',' << to_string(res.status) << ',' << fmt(res.estimates.theta_hat)
               << ',' << fmt(res.estimates.theta_error) << ','
               << (res.estimates.gamma_hat ? fmt(*res.estimates.gamma_hat) : "") << ','
               << (res.estimates.theta2_error ? fmt(*res.estimates.theta2_error) : "")
               << '\n';
    }
  }
  const fs::path dir = output_dir(c, "vista_sweep");
  fs::create_directories(dir);
  std::ostringstream summary;
  write_summary_csv(rows, summary);
  write_text_file(dir / "summary.csv", summary.str());
  write_text_file(dir / "runs.csv", runs_csv.str());
  write_text_file(dir / "config.json", config_to_json(c).dump(2) + "\n");
  out << summary.str();
  out << "wrote " << dir.string() << '\n';
  return 0;
}

int cmd_baseline(const BaselineConfig& b, std::uint64_t seed, int seeds,
                 const std::string& out_dir, std::ostream& out) {
  if (seeds < 1) throw ConfigError("--seeds must be >= 1");
  std::ostringstream csv;
  csv << "replica,seed,peak_bin,theta_hat,theta_error\n";
  std::vector<double> errors;
  for (int r = 0; r < seeds; ++r) {
    const std::uint64_t s =
        seeds == 1 ? seed : derive_seed(seed, {kStreamReplica, static_cast<std::uint64_t>(r)});
    const BaselineOutcome o = run_baseline_fft(b, s);
    const double e = std::abs(o.theta_hat - b.theta);
    errors.push_back(e);
    csv << r << ',' << s << ',' << o.peak_bin << ',' << fmt(o.theta_hat) << ','
        << fmt(e) << '\n';
  }
  out << csv.str();
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "baseline.csv", csv.str());
    out << "wrote " << out_dir << '\n';
  }
  return 0;
}

int cmd_scaling(double gamma, double theta, std::int64_t shots,
                const std::string& n_range, int seeds, std::uint64_t seed,
                int max_epochs, const std::string& out_dir, std::ostream& out) {
  if (seeds < 1) throw ConfigError("--seeds must be >= 1");
  RunConfig c = scaling_config(theta, gamma, shots, seed);
  c.optimizer.max_epochs = max_epochs;
  const std::vector<int> ns = parse_int_range(n_range);
  for (int n : ns) {
    RunConfig p = c;
    p.n = n;
    validate_config(p);
  }
  const ScalingReport rep = scaling_experiment(c, ns, seeds);
  std::ostringstream summary;
  write_summary_csv(rep.rows, summary);
  out << summary.str();
  out << "alpha=" << fmt(rep.fit.exponent) << " intercept=" << fmt(rep.fit.intercept)
      << " r2=" << fmt(rep.fit.r2) << '\n';
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "summary.csv", summary.str());
    nlohmann::json fit = {{"alpha", rep.fit.exponent},
                          {"intercept", rep.fit.intercept},
                          {"r2", rep.fit.r2},
                          {"config", config_to_json(c)}};
    write_text_file(fs::path(out_dir) / "fit.json", fit.dump(2) + "\n");
    out << "wrote " << out_dir << '\n';
  }
  return 0;
}

int cmd_bounds(const std::string& kind, const std::string& n_range, double gamma,
               std::int64_t shots, const std::string& out_file, std::ostream& out) {
  std::vector<BoundKind> kinds;
  if (kind == "all") {
    kinds = {BoundKind::PureDephasing, BoundKind::UnnormDephasing,
             BoundKind::QnDephasing, BoundKind::PureAmpDamp, BoundKind::QnAmpDamp};
  } else {
    kinds = {bound_kind_from_string(kind)};
  }
  const std::vector<int> ns = parse_int_range(n_range);
  std::ostringstream csv;
  csv << "kind,n,gamma,shots,delta_theta\n";
  for (BoundKind k : kinds) {
    const BoundCurve curve = crb_curve(k, ns, gamma, shots);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      csv << to_string(k) << ',' << ns[i] << ',' << fmt(gamma) << ',' << shots << ','
          << fmt(curve.values[i]) << '\n';
    }
  }
  out << csv.str();
  if (!out_file.empty()) write_text_file(out_file, csv.str());
  return 0;
}

int cmd_oracle(int n, double gamma, double theta, const std::string& channel,
               int steps, std::ostream& out) {
  const ChannelKind ch = channel_from_string(channel);
  if (ch == ChannelKind::None && gamma != 0.0) {
    throw ConfigError("--channel none cannot carry a rate");
  }
  const double dev = oracle_deviation(n, theta, gamma, ch, steps);
  const bool ok = dev <= 1e-6;
  out << "n=" << n << " gamma=" << fmt(gamma) << " theta=" << fmt(theta)
      << " channel=" << channel << " steps=" << steps
      << " max_abs_deviation=" << fmt(dev) << (ok ? " ok" : " FAILED") << '\n';
  return ok ? 0 : 2;
}

int cmd_calibrate(int n, double theta, const std::string& gammas, int seeds,
                  std::uint64_t seed, const std::string& out_dir, std::ostream& out) {
  RunConfig c;
  c.mode = ProtocolKind::VistaNoisyDephasing;
  c.n = n;
  c.theta = theta;
  c.channel = ChannelKind::Dephasing;
  c.normalization = Normalization::QuasiNormalized;
  c.seed = seed;
  validate_config(c);
  const CalibrationReport rep = calibration_experiment(c, parse_real_range(gammas), seeds);
  std::ostringstream csv;
  csv << "gamma_true,mean_gamma_hat\n";
  for (std::size_t i = 0; i < rep.gammas.size(); ++i) {
    csv << fmt(rep.gammas[i]) << ',' << fmt(rep.mean_gamma_hat[i]) << '\n';
  }
  out << csv.str();
  out << "held_out_raw_error=" << fmt(rep.raw_error)
      << " held_out_calibrated_error=" << fmt(rep.calibrated_error) << '\n';
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "calibration.csv", csv.str());
    out << "wrote " << out_dir << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"VISTA quantum metrology simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed_override;
  std::uint64_t seed = 1;
  int seeds = 10;
  std::string param, values;

  auto* run = app.add_subcommand("run", "run one protocol from a config file");
  run->add_option("--config", config_path, "config JSON")->required();
  run->add_option("--seed", seed_override, "override the master seed");
  run->add_option("--out", out_dir, "output directory");

  auto* sweep = app.add_subcommand("sweep", "seed replicas over an optional grid");
  sweep->add_option("--config", config_path, "config JSON")->required();
  sweep->add_option("--seeds", seeds, "replicas per grid point");
  sweep->add_option("--param", param, "grid parameter: n, gamma or theta");
  sweep->add_option("--values", values, "grid values, a:b:step or a,b,c");
  sweep->add_option("--seed", seed_override, "override the master seed");
  sweep->add_option("--out", out_dir, "output directory");

  auto* cascade = app.add_subcommand("cascade", "staged run over increasing n");
  cascade->add_option("--config", config_path, "config JSON")->required();
  cascade->add_option("--seed", seed_override, "override the master seed");
  cascade->add_option("--out", out_dir, "output directory");

  BaselineConfig b;
  auto* baseline = app.add_subcommand("baseline", "X-stabilizer time series + FFT");
  baseline->add_option("--n", b.n, "qubits");
  baseline->add_option("--theta", b.theta, "true phase rate");
  baseline->add_option("--gamma", b.gamma, "dephasing rate");
  baseline->add_option("--time", b.total_time, "total time T");
  baseline->add_option("--steps", b.steps, "time steps M");
  baseline->add_option("--shots", b.shots_per_step, "shots per time step");
  baseline->add_option("--seed", seed, "master seed");
  baseline->add_option("--seeds", seeds, "replicas")->default_val(1);
  baseline->add_option("--out", out_dir, "output directory");

  double gamma = 0.005, theta = 0.05;
  std::int64_t shots = 100000;
  std::string n_range = "2:12:2";
  int max_epochs = 400;
  auto* scaling = app.add_subcommand("scaling", "error versus n and power-law fit");
  scaling->add_option("--gamma", gamma, "dephasing rate");
  scaling->add_option("--theta", theta, "true phase rate");
  scaling->add_option("--shots", shots, "shots per loss evaluation");
  scaling->add_option("--n", n_range, "qubit range a:b:step or list");
  scaling->add_option("--seeds", seeds, "replicas per n");
  scaling->add_option("--seed", seed, "master seed");
  scaling->add_option("--max-epochs", max_epochs, "epochs per run");
  scaling->add_option("--out", out_dir, "output directory");

  std::string kind = "all";
  auto* bounds = app.add_subcommand("bounds", "Cramer-Rao bound curves as CSV");
  bounds->add_option("--kind", kind,
                     "pure_dephasing, unnorm_dephasing, qn_dephasing, "
                     "pure_ampdamp, qn_ampdamp or all");
  bounds->add_option("--n", n_range, "qubit range");
  bounds->add_option("--gamma", gamma, "noise rate");
  bounds->add_option("--shots", shots, "shots");
  bounds->add_option("--out", out_dir, "output CSV file");

  int n = 4, steps = 2000;
  std::string channel = "dephasing";
  double oracle_theta = 0.05;
  auto* oracle = app.add_subcommand("oracle-check", "closed form versus RK4");
  oracle->add_option("--n", n, "qubits (<= 8)");
  oracle->add_option("--gamma", gamma, "noise rate");
  oracle->add_option("--theta", oracle_theta, "phase rate");
  oracle->add_option("--channel", channel, "none, dephasing or amplitude_damping");
  oracle->add_option("--steps", steps, "RK4 steps");

  std::string gamma_list = "0.02:0.1:0.02";
  int cal_n = 10;
  double cal_theta = 1e-3;
  auto* calibrate = app.add_subcommand("calibrate", "learned-vs-true decay calibration");
  calibrate->add_option("--n", cal_n, "qubits");
  calibrate->add_option("--theta", cal_theta, "true phase rate");
  calibrate->add_option("--gammas", gamma_list, "decay grid");
  calibrate->add_option("--seeds", seeds, "replicas per rate (half held out)");
  calibrate->add_option("--seed", seed, "master seed");
  calibrate->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 1;
  }

  try {
    if (*run) return cmd_run(config_with_overrides(config_path, seed_override, out_dir), out);
    if (*sweep) {
      return cmd_sweep(config_with_overrides(config_path, seed_override, out_dir), seeds,
                       param, values, out);
    }
    if (*cascade) {
      RunConfig c = config_with_overrides(config_path, seed_override, out_dir);
      c.mode = ProtocolKind::Cascade;
      c.normalization = Normalization::Plain;
      validate_config(c);
      return cmd_run(c, out);
    }
    if (*baseline) return cmd_baseline(b, seed, seeds, out_dir, out);
    if (*scaling) {
      return cmd_scaling(gamma, theta, shots, n_range, seeds, seed, max_epochs, out_dir, out);
    }
    if (*bounds) return cmd_bounds(kind, n_range, gamma, shots, out_dir, out);
    if (*oracle) return cmd_oracle(n, gamma, oracle_theta, channel, steps, out);
    if (*calibrate) {
      return cmd_calibrate(cal_n, cal_theta, gamma_list, seeds, seed, out_dir, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace vista
