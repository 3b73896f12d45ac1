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

#include "vista/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>

#include "vista/errors.hpp"

namespace vista {

void ParamVector::add(std::string name, ParamKind kind, double value) {
  names.push_back(std::move(name));
  kinds.push_back(kind);
  values.push_back(value);
}

void ParamVector::clamp() {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (kinds[i] == ParamKind::Phi) {
      values[i] = std::clamp(values[i], 0.0, kPhiMax);
    }
  }
}

void AdamConfig::validate() const {
  if (!(lr > 0.0) || !(lr_phi > 0.0)) {
    throw ConfigError("optimizer.lr and optimizer.lr_phi must be positive");
  }
  if (!(decay > 0.0 && decay <= 1.0)) {
    throw ConfigError("optimizer.decay must lie in (0, 1]");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("optimizer.beta1 and optimizer.beta2 must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("optimizer.epsilon must be positive");
  if (max_epochs < 1) throw ConfigError("optimizer.max_epochs must be >= 1");
  if (!(tol >= 0.0)) throw ConfigError("optimizer.tol must be non-negative");
  if (window < 1) throw ConfigError("optimizer.window must be >= 1");
  if (phi_warmup < 0) throw ConfigError("optimizer.phi_warmup must be >= 0");
  if (!(wall_clock_seconds > 0.0)) {
    throw ConfigError("optimizer.wall_clock_seconds must be positive");
  }
  if (!(divergence_guard > 0.0)) {
    throw ConfigError("optimizer.divergence_guard must be positive");
  }
}

OptimizerState::OptimizerState(const AdamConfig& cfg, std::size_t params,
                               int qubits)
    : config(cfg), n(qubits), m(params, 0.0), v(params, 0.0) {}

double OptimizerState::base_lr() const {
  return config.lr * std::pow(config.decay, t);
}

double OptimizerState::learning_rate(ParamKind kind) const {
  const double schedule = std::pow(config.decay, t);
  if (kind == ParamKind::Phi) return config.lr_phi * schedule;
  const double scale = config.scale_theta_lr ? 1.0 / n : 1.0;
  return config.lr * scale * schedule;
}

void adam_step(OptimizerState& state, ParamVector& p,
               const std::vector<double>& g) {
  if (g.size() != p.size() || state.m.size() != p.size()) {
    throw DimensionError("gradient and parameter sizes differ");
  }
  for (double gi : g) {
    if (!std::isfinite(gi)) throw DomainError("non-finite gradient");
  }
  const AdamConfig& c = state.config;
  const int step = state.t + 1;
  const double bc1 = 1.0 - std::pow(c.beta1, step);
  const double bc2 = 1.0 - std::pow(c.beta2, step);
  for (std::size_t i = 0; i < p.size(); ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * g[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * g[i] * g[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    p.values[i] -=
        state.learning_rate(p.kinds[i]) * mhat / (std::sqrt(vhat) + c.epsilon);
  }
  p.clamp();
  state.t = step;
}

void ShotSchedule::validate() const {
  if (start < 1 || end < 1) throw ConfigError("shots.start and shots.end must be >= 1");
  if (start > end) throw ConfigError("shots.start must not exceed shots.end");
}

std::int64_t ShotSchedule::shots_at(int epoch, int max_epochs) const {
  if (profile == ShotProfile::Constant || max_epochs <= 1) return start;
  const double f = std::clamp(
      static_cast<double>(epoch) / static_cast<double>(max_epochs - 1), 0.0, 1.0);
  const double s = static_cast<double>(start);
  const double e = static_cast<double>(end);
  const double value = profile == ShotProfile::Linear
                           ? s + (e - s) * f
                           : s * std::pow(e / s, f);
  return static_cast<std::int64_t>(std::llround(value));
}

void GradientConfig::validate() const {
  if (h_theta && !(*h_theta > 0.0)) {
    throw ConfigError("gradient.h_theta must be positive");
  }
  if (!(h_phi > 0.0)) throw ConfigError("gradient.h_phi must be positive");
}

double GradientConfig::step_for(ParamKind kind, int n) const {
  if (kind == ParamKind::Phi) return h_phi;
  return h_theta.value_or(std::numbers::pi / (8.0 * n));
}

double evaluate_loss(const LossModel& model, const std::vector<double>& params,
                     ShotSampler* s) {
  const OverlapValue o = model.overlap(params);
  const double value = s ? loss(o, *s, model.normalization())
                         : exact_loss(o, model.normalization());
  if (!std::isfinite(value)) {
    throw NumericalConsistencyError("loss evaluated to a non-finite value");
  }
  return value;
}

std::vector<double> estimate_gradient(const ParamVector& p,
                                      const LossModel& model, ShotSampler* s,
                                      const GradientConfig& cfg,
                                      const std::vector<bool>& active) {
  const int n = model.qubits();
  std::vector<double> g(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!active.empty() && !active[i]) continue;
    std::vector<double> plus = p.values;
    std::vector<double> minus = p.values;
    double scale;
    if (cfg.method == GradientMethod::ParameterShift &&
        model.phase_parameter(i)) {
      // L = 1 - c cos(2 n (theta - x)) / 2 + const, so a pi/(4n) shift gives
      // the derivative exactly: dL/dx = n [L(x + s) - L(x - s)].
      const double shift = std::numbers::pi / (4.0 * n);
      plus[i] += shift;
      minus[i] -= shift;
      scale = static_cast<double>(n);
    } else {
      const double h = cfg.step_for(p.kinds[i], n);
      plus[i] += h;
      minus[i] -= h;
      if (p.kinds[i] == ParamKind::Phi) {
        plus[i] = std::min(plus[i], kPhiMax);
        minus[i] = std::max(minus[i], 0.0);
      }
      scale = 1.0 / (plus[i] - minus[i]);
    }
    double lp, lm;
    if (s && cfg.common_random_numbers) {
      const ShotSampler base = s->fork({i});
      ShotSampler sp = base;
      ShotSampler sm = base;
      lp = evaluate_loss(model, plus, &sp);
      lm = evaluate_loss(model, minus, &sm);
    } else {
      lp = evaluate_loss(model, plus, s);
      lm = evaluate_loss(model, minus, s);
    }
    g[i] = scale * (lp - lm);
  }
  return g;
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged:
      return "converged";
    case RunStatus::MaxEpochs:
      return "max_epochs";
    case RunStatus::Diverged:
      return "diverged";
    case RunStatus::CascadeFailed:
      return "cascade_failed";
  }
  return "unknown";
}

OptimizationOutcome minimize(const LossModel& model, ParamVector init,
                             const OptimizationSettings& settings,
                             std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  const AdamConfig& adam = settings.adam;
  OptimizationOutcome out;
  ParamVector p = std::move(init);
  p.clamp();
  OptimizerState state(adam, p.size(), model.qubits());
  std::deque<double> moves;
  double window_sum = 0.0;
  out.status = RunStatus::MaxEpochs;

  auto healthy = [&](const ParamVector& q) {
    for (double x : q.values) {
      if (!std::isfinite(x) || std::abs(x) > adam.divergence_guard) return false;
    }
    return true;
  };

  for (int epoch = 0; epoch < adam.max_epochs; ++epoch) {
    if (!healthy(p)) {
      out.status = RunStatus::Diverged;
      break;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    if (elapsed > adam.wall_clock_seconds) break;

    const bool exact = settings.shots.exact;
    const std::int64_t shots =
        exact ? 0 : settings.shots.shots_at(epoch, adam.max_epochs);
    const std::uint64_t e = static_cast<std::uint64_t>(epoch);

    std::vector<bool> active(p.size(), true);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.kinds[i] == ParamKind::Phi && epoch < adam.phi_warmup) {
        active[i] = false;
      }
    }

    std::vector<double> g;
    double trace_loss;
    if (exact) {
      g = estimate_gradient(p, model, nullptr, settings.gradient, active);
      trace_loss = evaluate_loss(model, p.values, nullptr);
    } else {
      ShotSampler grad_sampler(derive_seed(seed, {kStreamGradient, e}), shots);
      g = estimate_gradient(p, model, &grad_sampler, settings.gradient, active);
      ShotSampler trace_sampler(derive_seed(seed, {kStreamTrace, e}), shots);
      trace_loss = evaluate_loss(model, p.values, &trace_sampler);
      const auto evaluations = 1 + 2 * std::count(active.begin(), active.end(), true);
      out.total_shots += shots * evaluations;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.loss = trace_loss;
    rec.params = p.values;
    rec.grad_norm = std::sqrt(
        std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
    rec.shots = shots;
    rec.lr = state.base_lr();
    out.trace.push_back(std::move(rec));

    const std::vector<double> before = p.values;
    adam_step(state, p, g);

    double move = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      move = std::max(move, std::abs(p.values[i] - before[i]));
    }
    moves.push_back(move);
    window_sum += move;
    if (static_cast<int>(moves.size()) > adam.window) {
      window_sum -= moves.front();
      moves.pop_front();
    }
    if (static_cast<int>(moves.size()) == adam.window &&
        window_sum / adam.window < adam.tol) {
      out.status = RunStatus::Converged;
      break;
    }
  }
  if (out.status == RunStatus::MaxEpochs && !healthy(p)) {
    out.status = RunStatus::Diverged;
  }
  out.final_params = std::move(p);
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return out;
}

}  // namespace vista
