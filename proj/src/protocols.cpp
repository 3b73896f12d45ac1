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

#include "vista/protocols.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vista/errors.hpp"
#include "vista/rng.hpp"

namespace vista {

namespace {

constexpr double kPi = std::numbers::pi;

OptimizationSettings settings_from(const RunConfig& c) {
  return OptimizationSettings{c.optimizer, c.shots, c.gradient};
}

AnsatzKind ansatz_for(ProtocolKind mode) {
  switch (mode) {
    case ProtocolKind::VistaNoisyDephasing:
      return AnsatzKind::Dephasing;
    case ProtocolKind::VistaNoisyAmpDamp:
      return AnsatzKind::AmplitudeDamping;
    default:
      return AnsatzKind::Pure;
  }
}

double uniform_window(Xoshiro256& rng, int n) {
  const double half = kPi / (2.0 * n);
  return -half + 2.0 * half * rng.uniform();
}

void append_trace(RunResult& into, const std::vector<EpochRecord>& trace) {
  const int offset = static_cast<int>(into.trace.size());
  for (EpochRecord rec : trace) {
    rec.epoch += offset;
    into.trace.push_back(std::move(rec));
  }
}

}  // namespace

ClosedFormModel::ClosedFormModel(const ClosedFormState& probe,
                                 AnsatzKind ansatz, Normalization norm,
                                 bool learn_phi, double fixed_phi)
    : probe_(probe),
      ansatz_(ansatz),
      norm_(norm),
      learn_phi_(learn_phi),
      fixed_phi_(fixed_phi) {
  if (ansatz == AnsatzKind::Pure && norm == Normalization::QuasiNormalized) {
    // Pure circuits have unit purity; both normalizations coincide.
    norm_ = Normalization::Plain;
  }
}

OverlapValue ClosedFormModel::overlap(const std::vector<double>& params) const {
  const double phi = learn_phi_ ? params.at(1) : fixed_phi_;
  const ClosedFormState circuit =
      circuit_ansatz_state(probe_.n, params.at(0), CircuitAngle(phi), ansatz_);
  return hs_overlap_closed(probe_, circuit);
}

TrotterModel::TrotterModel(DenseOperator probe, int trotter_steps, double time,
                           std::optional<double> fixed_theta2)
    : probe_(std::move(probe)),
      n_(qubits_for_dim(probe_.rows())),
      trotter_steps_(trotter_steps),
      time_(time),
      fixed_theta2_(fixed_theta2) {
  ghz_ = ghz_vector(n_);
}

OverlapValue TrotterModel::overlap(const std::vector<double>& params) const {
  HamiltonianSpec ham;
  ham.theta_z = params.at(0);
  ham.theta_x = fixed_theta2_ ? *fixed_theta2_ : params.at(1);
  ham.time = time_;
  return overlap_with_pure(probe_, trotter_evolve(ghz_, ham, trotter_steps_));
}

DenseOperator multiparam_probe(int n, const HamiltonianSpec& ham,
                               const ChannelSpec& ch, int rk4_steps) {
  const DenseOperator rho0 = outer(ghz_vector(n));
  if (n <= 8) return lindblad_rk4_oracle(rho0, ham, ch, rk4_steps);
  return local_channel_evolve(rho0, ham, ch, rk4_steps);
}

double initial_theta(const RunConfig& c, int n) {
  if (c.init.theta) return *c.init.theta;
  if (c.init.delta_theta) return c.theta + *c.init.delta_theta;
  Xoshiro256 rng(derive_seed(c.seed, {kStreamInit}));
  return c.theta + uniform_window(rng, n);
}

namespace {

double initial_theta2(const RunConfig& c) {
  const double truth = c.theta2.value_or(0.0);
  if (c.init.theta2) return *c.init.theta2;
  if (c.init.delta_theta2) return truth + *c.init.delta_theta2;
  // Second draw of the init stream; the first one is theta.
  Xoshiro256 rng(derive_seed(c.seed, {kStreamInit}));
  rng.uniform();
  return truth + uniform_window(rng, c.n);
}

}  // namespace

RunResult run_vista(const RunConfig& config) {
  validate_config(config);
  const ProtocolKind mode = config.mode;
  if (mode != ProtocolKind::VistaPure && mode != ProtocolKind::VistaNoisyDephasing &&
      mode != ProtocolKind::VistaNoisyAmpDamp) {
    throw ConfigError("run_vista needs a single-parameter vista mode, got " +
                      to_string(mode));
  }
  const HamiltonianSpec ham{config.theta, 0.0, config.time};
  const ChannelSpec ch{config.channel, config.gamma};
  const ClosedFormState probe = evolve_closed_form(config.n, ham, ch);

  // The ansatz phase and angle act over the same evolution time as the
  // probe, so theta and gamma estimates are per unit time.
  struct TimedModel : ClosedFormModel {
    using ClosedFormModel::ClosedFormModel;
    double time = 1.0;
    OverlapValue overlap(const std::vector<double>& params) const override {
      std::vector<double> scaled = params;
      scaled[0] *= time;
      return ClosedFormModel::overlap(scaled);
    }
    // The pi/(4n) shift assumes unit time; otherwise use differences.
    bool phase_parameter(std::size_t index) const override {
      return time == 1.0 && ClosedFormModel::phase_parameter(index);
    }
  };

  const AnsatzKind ansatz = ansatz_for(mode);
  const bool learn_phi = ansatz != AnsatzKind::Pure;
  TimedModel model(probe, ansatz, config.normalization, learn_phi);
  model.time = config.time;

  ParamVector p;
  p.add("theta_hat", ParamKind::Theta, initial_theta(config, config.n));
  if (learn_phi) p.add("phi", ParamKind::Phi, config.init.phi);

  const OptimizationOutcome out =
      minimize(model, p, settings_from(config), config.seed);

  RunResult r;
  r.config = config;
  r.param_names = out.final_params.names;
  r.trace = out.trace;
  r.status = out.status;
  r.total_shots = out.total_shots;
  r.wall_seconds = out.wall_seconds;
  r.estimates.theta_hat = out.final_params.values[0];
  r.estimates.theta_error = std::abs(r.estimates.theta_hat - config.theta);
  if (learn_phi) {
    const double phi = out.final_params.values[1];
    r.estimates.phi = phi;
    if (std::cos(phi) > 0.0) {
      r.estimates.gamma_hat = decay_from_angle(phi, ansatz) / config.time;
    } else {
      r.estimates.gamma_hat_valid = false;
      r.warnings.push_back("circuit angle at pi/2; decay inversion undefined");
    }
  }
  return r;
}

RunResult run_multiparam(const RunConfig& config) {
  validate_config(config);
  if (config.mode != ProtocolKind::VistaMultiparam) {
    throw ConfigError("run_multiparam needs mode vista_multiparam");
  }
  const double theta2 = config.theta2.value_or(0.0);
  if (config.multiparam.fix_theta2 && theta2 == 0.0) {
    // No X component left: this is exactly the single-parameter protocol.
    RunConfig single = config;
    single.mode = ProtocolKind::VistaPure;
    RunResult r = run_vista(single);
    r.config = config;
    r.estimates.theta2_hat = 0.0;
    r.estimates.theta2_error = 0.0;
    return r;
  }

  const HamiltonianSpec ham{config.theta, theta2, config.time};
  const ChannelSpec ch{config.channel, config.gamma};
  const std::optional<double> fixed =
      config.multiparam.fix_theta2 ? std::optional<double>(theta2) : std::nullopt;
  TrotterModel model(
      multiparam_probe(config.n, ham, ch, config.multiparam.rk4_steps),
      config.multiparam.trotter_steps, config.time, fixed);

  ParamVector p;
  p.add("theta_hat", ParamKind::Theta, initial_theta(config, config.n));
  if (!fixed) p.add("theta2_hat", ParamKind::Theta, initial_theta2(config));

  const OptimizationOutcome out =
      minimize(model, p, settings_from(config), config.seed);

  RunResult r;
  r.config = config;
  r.param_names = out.final_params.names;
  r.trace = out.trace;
  r.status = out.status;
  r.total_shots = out.total_shots;
  r.wall_seconds = out.wall_seconds;
  r.estimates.theta_hat = out.final_params.values[0];
  r.estimates.theta_error = std::abs(r.estimates.theta_hat - config.theta);
  r.estimates.theta2_hat = fixed ? theta2 : out.final_params.values[1];
  r.estimates.theta2_error = std::abs(*r.estimates.theta2_hat - theta2);
  return r;
}

RunResult run_cascade(const RunConfig& config) {
  validate_config(config);
  const auto& seq = config.cascade.n_sequence;
  RunResult r;
  r.config = config;
  r.param_names = {"theta_hat"};
  r.status = RunStatus::MaxEpochs;

  double theta_prev = initial_theta(config, seq.front());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const int nk = seq[k];
    RunConfig stage = config;
    stage.mode = ProtocolKind::VistaPure;
    stage.n = nk;
    stage.normalization = Normalization::Plain;
    stage.init.theta = theta_prev;
    stage.init.delta_theta.reset();
    stage.seed = derive_seed(config.seed, {kStreamStage, k});
    if (!config.cascade.max_epochs.empty()) {
      stage.optimizer.max_epochs = config.cascade.max_epochs[k];
    }

    StageRecord rec;
    rec.n = nk;
    rec.theta_init = theta_prev;
    rec.first_epoch = static_cast<int>(r.trace.size());

    // Mean gradient a quarter period away from the hand-off point. Without
    // signal at this n it is pure shot noise around zero.
    const ClosedFormState probe = evolve_closed_form(
        nk, HamiltonianSpec{config.theta, 0.0, config.time},
        ChannelSpec{config.channel, config.gamma});
    const ClosedFormModel model(probe, AnsatzKind::Pure, Normalization::Plain,
                                false);
    ParamVector at;
    at.add("theta_hat", ParamKind::Theta,
           (theta_prev + kPi / (4.0 * nk)) * config.time);
    double sum = 0.0;
    const int evals = config.cascade.probe_evaluations;
    for (int i = 0; i < evals; ++i) {
      if (config.shots.exact) {
        sum += estimate_gradient(at, model, nullptr, config.gradient)[0];
      } else {
        ShotSampler s(derive_seed(config.seed, {kStreamProbe, k, static_cast<std::uint64_t>(i)}),
                      config.shots.start);
        sum += estimate_gradient(at, model, &s, config.gradient)[0];
      }
    }
    rec.probe_gradient = std::abs(sum / evals);
    if (*rec.probe_gradient < config.cascade.g_min) {
      rec.epochs = 0;
      rec.theta_hat = theta_prev;
      rec.theta_error = std::abs(theta_prev - config.theta);
      r.stages.push_back(rec);
      if (k == 0) {
        r.status = RunStatus::CascadeFailed;
        r.warnings.push_back("flat loss landscape at the first stage");
      } else {
        r.warnings.push_back("vanishing gradient at n = " + std::to_string(nk) +
                             "; returning the n = " + std::to_string(seq[k - 1]) +
                             " estimate");
      }
      break;
    }

    if (k > 0 && std::abs(theta_prev - config.theta) > kPi / (2.0 * nk)) {
      rec.window_breach = true;
      r.warnings.push_back("window breach entering n = " + std::to_string(nk));
    }

    const RunResult sr = run_vista(stage);
    append_trace(r, sr.trace);
    r.total_shots += sr.total_shots;
    r.wall_seconds += sr.wall_seconds;
    rec.epochs = static_cast<int>(sr.trace.size());
    rec.theta_hat = sr.estimates.theta_hat;
    rec.theta_error = sr.estimates.theta_error;
    rec.status = sr.status;
    r.stages.push_back(rec);
    r.status = sr.status;
    if (sr.status == RunStatus::Diverged) {
      r.status = RunStatus::CascadeFailed;
      r.warnings.push_back("stage at n = " + std::to_string(nk) + " diverged");
      break;
    }
    theta_prev = sr.estimates.theta_hat;
  }
  r.estimates.theta_hat = theta_prev;
  r.estimates.theta_error = std::abs(theta_prev - config.theta);
  return r;
}

BaselineOutcome run_baseline_fft(const BaselineConfig& b, std::uint64_t seed) {
  if (b.steps < 2) throw DomainError("baseline needs at least two time steps");
  if (!(b.total_time > 0.0)) throw DomainError("baseline time must be positive");
  if (b.shots_per_step < 1) throw DomainError("baseline needs at least one shot");
  const int m = b.steps;
  BaselineOutcome out;
  out.series.resize(m);
  for (int k = 0; k < m; ++k) {
    const double t = k * b.total_time / m;
    ShotSampler s(derive_seed(seed, {kStreamBaseline, static_cast<std::uint64_t>(k)}),
                  b.shots_per_step);
    out.series[k] = parity_sample(parity_probability(b.n, b.theta, b.gamma, t), s);
  }
  double mean = 0.0;
  for (double x : out.series) mean += x;
  mean /= m;

  double best = -1.0;
  int best_bin = 0;
  double total = 0.0;
  for (int f = 1; f <= m / 2; ++f) {
    Complex acc = 0.0;
    for (int k = 0; k < m; ++k) {
      acc += (out.series[k] - mean) *
             std::polar(1.0, -2.0 * kPi * f * k / static_cast<double>(m));
    }
    const double mag = std::abs(acc);
    total += mag;
    // Strict comparison keeps the lower bin on ties.
    if (mag > best) {
      best = mag;
      best_bin = f;
    }
  }
  if (!(total > 1e-12 * m)) {
    throw NoPeakError("parity series is flat; no spectral peak");
  }
  out.peak_bin = best_bin;
  out.peak_frequency = best_bin / b.total_time;
  out.theta_hat = kPi * out.peak_frequency / b.n;
  return out;
}

RunResult run_optimization(const RunConfig& config) {
  switch (config.mode) {
    case ProtocolKind::VistaPure:
    case ProtocolKind::VistaNoisyDephasing:
    case ProtocolKind::VistaNoisyAmpDamp:
      return run_vista(config);
    case ProtocolKind::VistaMultiparam:
      return run_multiparam(config);
    case ProtocolKind::Cascade:
      return run_cascade(config);
    case ProtocolKind::BaselineFft: {
      validate_config(config);
      BaselineConfig b;
      b.n = config.n;
      b.theta = config.theta;
      b.gamma = config.gamma;
      b.total_time = config.baseline.total_time;
      b.steps = config.baseline.steps;
      b.shots_per_step = config.baseline.shots_per_step;
      const BaselineOutcome out = run_baseline_fft(b, config.seed);
      RunResult r;
      r.config = config;
      r.param_names = {"theta_hat"};
      r.status = RunStatus::Converged;
      r.estimates.theta_hat = out.theta_hat;
      r.estimates.theta_error = std::abs(out.theta_hat - config.theta);
      r.total_shots = b.shots_per_step * b.steps;
      return r;
    }
  }
  throw ConfigError("unknown protocol mode");
}

}  // namespace vista
