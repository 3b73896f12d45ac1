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

#include "vista/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "vista/errors.hpp"

namespace vista {

using nlohmann::json;

namespace {

// Reads typed keys from one JSON object and remembers which keys were used,
// so anything left over can be rejected by name.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string prefix)
      : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) {
      throw ConfigError((prefix_.empty() ? std::string("config")
                                         : prefix_.substr(0, prefix_.size() - 1)) +
                        " must be a JSON object");
    }
  }

  bool has(const std::string& key) const {
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json* raw(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return nullptr;
    return &j_.at(key);
  }

  std::optional<double> number(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(key, "must be a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(key, "must be finite");
    return x;
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) fail(key, "must be an integer");
    return v->get<std::int64_t>();
  }

  std::optional<std::uint64_t> unsigned_integer(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v->get<std::int64_t>());
    }
    fail(key, "must be a non-negative integer");
    return std::nullopt;
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) fail(key, "must be true or false");
    return v->get<bool>();
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(key, "must be a string");
    return v->get<std::string>();
  }

  std::optional<std::vector<int>> int_list(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_array()) fail(key, "must be an array of integers");
    std::vector<int> out;
    for (const json& e : *v) {
      if (!e.is_number_integer()) fail(key, "must be an array of integers");
      out.push_back(e.get<int>());
    }
    return out;
  }

  std::optional<ObjectReader> object(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    return ObjectReader(*v, prefix_ + key + ".");
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw ConfigError("unknown config key '" + prefix_ + item.key() + "'");
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError("config key '" + prefix_ + key + "' " + what);
  }

 private:
  const json& j_;
  std::string prefix_;
  std::set<std::string> seen_;
};

template <typename T, typename U>
void assign(T& dst, const std::optional<U>& src) {
  if (src) dst = static_cast<T>(*src);
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "plain") return Normalization::Plain;
  if (s == "quasi_normalized") return Normalization::QuasiNormalized;
  throw ConfigError("config key 'normalization' must be plain or quasi_normalized");
}

ShotProfile profile_from_string(const std::string& s) {
  if (s == "constant") return ShotProfile::Constant;
  if (s == "linear") return ShotProfile::Linear;
  if (s == "geometric") return ShotProfile::Geometric;
  throw ConfigError("config key 'shots.profile' must be constant, linear or geometric");
}

GradientMethod method_from_string(const std::string& s) {
  if (s == "central_difference") return GradientMethod::CentralDifference;
  if (s == "parameter_shift") return GradientMethod::ParameterShift;
  throw ConfigError(
      "config key 'gradient.method' must be central_difference or parameter_shift");
}

ChannelKind default_channel(ProtocolKind mode, double gamma) {
  switch (mode) {
    case ProtocolKind::VistaNoisyDephasing:
      return ChannelKind::Dephasing;
    case ProtocolKind::VistaNoisyAmpDamp:
      return ChannelKind::AmplitudeDamping;
    default:
      return gamma > 0.0 ? ChannelKind::Dephasing : ChannelKind::None;
  }
}

bool is_noisy_twin(ProtocolKind mode) {
  return mode == ProtocolKind::VistaNoisyDephasing ||
         mode == ProtocolKind::VistaNoisyAmpDamp;
}

}  // namespace

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::VistaPure:
      return "vista_pure";
    case ProtocolKind::VistaNoisyDephasing:
      return "vista_noisy_dephasing";
    case ProtocolKind::VistaNoisyAmpDamp:
      return "vista_noisy_ampdamp";
    case ProtocolKind::VistaMultiparam:
      return "vista_multiparam";
    case ProtocolKind::Cascade:
      return "cascade";
    case ProtocolKind::BaselineFft:
      return "baseline_fft";
  }
  return "unknown";
}

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::None:
      return "none";
    case ChannelKind::Dephasing:
      return "dephasing";
    case ChannelKind::AmplitudeDamping:
      return "amplitude_damping";
  }
  return "unknown";
}

std::string to_string(Normalization kind) {
  return kind == Normalization::Plain ? "plain" : "quasi_normalized";
}

std::string to_string(ShotProfile profile) {
  switch (profile) {
    case ShotProfile::Constant:
      return "constant";
    case ShotProfile::Linear:
      return "linear";
    case ShotProfile::Geometric:
      return "geometric";
  }
  return "unknown";
}

std::string to_string(GradientMethod method) {
  return method == GradientMethod::CentralDifference ? "central_difference"
                                                     : "parameter_shift";
}

ProtocolKind protocol_from_string(const std::string& s) {
  for (ProtocolKind k :
       {ProtocolKind::VistaPure, ProtocolKind::VistaNoisyDephasing,
        ProtocolKind::VistaNoisyAmpDamp, ProtocolKind::VistaMultiparam,
        ProtocolKind::Cascade, ProtocolKind::BaselineFft}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("config key 'mode' has unknown value '" + s + "'");
}

ChannelKind channel_from_string(const std::string& s) {
  for (ChannelKind k : {ChannelKind::None, ChannelKind::Dephasing,
                        ChannelKind::AmplitudeDamping}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("config key 'channel' has unknown value '" + s + "'");
}

RunConfig parse_config(const json& j) {
  ObjectReader r(j, "");
  RunConfig c;

  const auto mode = r.string("mode");
  if (!mode) throw ConfigError("config key 'mode' is required");
  c.mode = protocol_from_string(*mode);
  const auto n = r.integer("n");
  if (!n) throw ConfigError("config key 'n' is required");
  c.n = static_cast<int>(*n);
  const auto theta = r.number("theta");
  if (!theta) throw ConfigError("config key 'theta' is required");
  c.theta = *theta;
  const auto seed = r.unsigned_integer("seed");
  if (!seed) throw ConfigError("config key 'seed' is required");
  c.seed = *seed;

  c.theta2 = r.number("theta2");
  assign(c.gamma, r.number("gamma"));
  assign(c.time, r.number("time"));
  c.output = r.string("output");

  const auto channel = r.string("channel");
  c.channel = channel ? channel_from_string(*channel)
                      : default_channel(c.mode, c.gamma);
  const auto norm = r.string("normalization");
  if (norm) {
    c.normalization = normalization_from_string(*norm);
  } else {
    c.normalization = is_noisy_twin(c.mode) ? Normalization::QuasiNormalized
                                            : Normalization::Plain;
  }

  if (auto o = r.object("optimizer")) {
    assign(c.optimizer.lr, o->number("lr"));
    assign(c.optimizer.lr_phi, o->number("lr_phi"));
    assign(c.optimizer.decay, o->number("decay"));
    assign(c.optimizer.beta1, o->number("beta1"));
    assign(c.optimizer.beta2, o->number("beta2"));
    assign(c.optimizer.epsilon, o->number("epsilon"));
    assign(c.optimizer.max_epochs, o->integer("max_epochs"));
    assign(c.optimizer.tol, o->number("tol"));
    assign(c.optimizer.window, o->integer("window"));
    assign(c.optimizer.scale_theta_lr, o->boolean("scale_theta_lr"));
    assign(c.optimizer.phi_warmup, o->integer("phi_warmup"));
    assign(c.optimizer.wall_clock_seconds, o->number("wall_clock_seconds"));
    assign(c.optimizer.divergence_guard, o->number("divergence_guard"));
    o->finish();
  }
  if (auto o = r.object("shots")) {
    assign(c.shots.start, o->integer("start"));
    assign(c.shots.end, o->integer("end"));
    if (auto p = o->string("profile")) c.shots.profile = profile_from_string(*p);
    assign(c.shots.exact, o->boolean("exact"));
    o->finish();
  }
  if (auto o = r.object("gradient")) {
    if (auto m = o->string("method")) c.gradient.method = method_from_string(*m);
    c.gradient.h_theta = o->number("h_theta");
    assign(c.gradient.h_phi, o->number("h_phi"));
    assign(c.gradient.common_random_numbers, o->boolean("common_random_numbers"));
    o->finish();
  }
  if (auto o = r.object("init")) {
    c.init.theta = o->number("theta");
    c.init.delta_theta = o->number("delta_theta");
    assign(c.init.phi, o->number("phi"));
    c.init.theta2 = o->number("theta2");
    c.init.delta_theta2 = o->number("delta_theta2");
    o->finish();
  }
  if (auto o = r.object("cascade")) {
    assign(c.cascade.n_sequence, o->int_list("n_sequence"));
    assign(c.cascade.g_min, o->number("g_min"));
    assign(c.cascade.probe_evaluations, o->integer("probe_evaluations"));
    assign(c.cascade.max_epochs, o->int_list("max_epochs"));
    o->finish();
  }
  if (auto o = r.object("baseline")) {
    assign(c.baseline.total_time, o->number("total_time"));
    assign(c.baseline.steps, o->integer("steps"));
    assign(c.baseline.shots_per_step, o->integer("shots_per_step"));
    o->finish();
  }
  if (auto o = r.object("multiparam")) {
    assign(c.multiparam.trotter_steps, o->integer("trotter_steps"));
    assign(c.multiparam.rk4_steps, o->integer("rk4_steps"));
    assign(c.multiparam.fix_theta2, o->boolean("fix_theta2"));
    o->finish();
  }
  r.finish();
  validate_config(c);
  return c;
}

void validate_config(const RunConfig& c) {
  const int max_n = c.mode == ProtocolKind::VistaMultiparam ? kMaxOperatorQubits : 62;
  if (c.n < 1 || c.n > max_n) {
    throw ConfigError("config key 'n' must lie in [1, " + std::to_string(max_n) + "]");
  }
  if (!std::isfinite(c.theta)) throw ConfigError("config key 'theta' must be finite");
  if (!(c.gamma >= 0.0)) throw ConfigError("config key 'gamma' must be non-negative");
  if (!(c.time > 0.0)) throw ConfigError("config key 'time' must be positive");
  if (c.channel == ChannelKind::None && c.gamma != 0.0) {
    throw ConfigError("config key 'channel' is none but 'gamma' is non-zero");
  }
  switch (c.mode) {
    case ProtocolKind::VistaPure:
    case ProtocolKind::Cascade:
      if (c.normalization != Normalization::Plain) {
        throw ConfigError("config key 'normalization' must be plain for a pure ansatz");
      }
      break;
    case ProtocolKind::VistaNoisyDephasing:
      if (c.channel != ChannelKind::Dephasing) {
        throw ConfigError("config key 'channel' must be dephasing for vista_noisy_dephasing");
      }
      break;
    case ProtocolKind::VistaNoisyAmpDamp:
      if (c.channel != ChannelKind::AmplitudeDamping) {
        throw ConfigError(
            "config key 'channel' must be amplitude_damping for vista_noisy_ampdamp");
      }
      break;
    case ProtocolKind::VistaMultiparam:
      if (!c.theta2) throw ConfigError("config key 'theta2' is required for vista_multiparam");
      if (c.channel == ChannelKind::AmplitudeDamping) {
        throw ConfigError("config key 'channel' must be none or dephasing for vista_multiparam");
      }
      if (c.normalization != Normalization::Plain) {
        throw ConfigError("config key 'normalization' must be plain for vista_multiparam");
      }
      break;
    case ProtocolKind::BaselineFft:
      if (c.channel == ChannelKind::AmplitudeDamping) {
        throw ConfigError("config key 'channel' must be none or dephasing for baseline_fft");
      }
      break;
  }
  if (c.theta2 && !std::isfinite(*c.theta2)) {
    throw ConfigError("config key 'theta2' must be finite");
  }
  if (!(c.init.phi >= 0.0 && c.init.phi < std::numbers::pi / 2)) {
    throw ConfigError("config key 'init.phi' must lie in [0, pi/2)");
  }
  if (c.init.theta && c.init.delta_theta) {
    throw ConfigError("config keys 'init.theta' and 'init.delta_theta' are exclusive");
  }
  if (c.init.theta2 && c.init.delta_theta2) {
    throw ConfigError("config keys 'init.theta2' and 'init.delta_theta2' are exclusive");
  }
  c.optimizer.validate();
  c.shots.validate();
  c.gradient.validate();

  const auto& seq = c.cascade.n_sequence;
  if (seq.size() < 2) throw ConfigError("config key 'cascade.n_sequence' needs two or more stages");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 1 || (i > 0 && seq[i] <= seq[i - 1])) {
      throw ConfigError("config key 'cascade.n_sequence' must be strictly increasing and positive");
    }
  }
  if (c.mode == ProtocolKind::Cascade && seq.back() != c.n) {
    throw ConfigError("config key 'cascade.n_sequence' must end at 'n'");
  }
  if (!(c.cascade.g_min > 0.0)) throw ConfigError("config key 'cascade.g_min' must be positive");
  if (c.cascade.probe_evaluations < 1) {
    throw ConfigError("config key 'cascade.probe_evaluations' must be >= 1");
  }
  if (!c.cascade.max_epochs.empty()) {
    if (c.cascade.max_epochs.size() != seq.size()) {
      throw ConfigError("config key 'cascade.max_epochs' needs one entry per stage");
    }
    for (int e : c.cascade.max_epochs) {
      if (e < 1) throw ConfigError("config key 'cascade.max_epochs' entries must be >= 1");
    }
  }
  if (!(c.baseline.total_time > 0.0)) {
    throw ConfigError("config key 'baseline.total_time' must be positive");
  }
  if (c.baseline.steps < 2) throw ConfigError("config key 'baseline.steps' must be >= 2");
  if (c.baseline.shots_per_step < 1) {
    throw ConfigError("config key 'baseline.shots_per_step' must be >= 1");
  }
  if (c.multiparam.trotter_steps < 1) {
    throw ConfigError("config key 'multiparam.trotter_steps' must be >= 1");
  }
  if (c.multiparam.rk4_steps < 100) {
    throw ConfigError("config key 'multiparam.rk4_steps' must be >= 100");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const RunConfig& c) {
  json j;
  j["mode"] = to_string(c.mode);
  j["n"] = c.n;
  j["theta"] = c.theta;
  j["theta2"] = optional_json(c.theta2);
  j["gamma"] = c.gamma;
  j["channel"] = to_string(c.channel);
  j["normalization"] = to_string(c.normalization);
  j["time"] = c.time;
  j["seed"] = c.seed;
  j["output"] = optional_json(c.output);
  j["optimizer"] = {
      {"lr", c.optimizer.lr},
      {"lr_phi", c.optimizer.lr_phi},
      {"decay", c.optimizer.decay},
      {"beta1", c.optimizer.beta1},
      {"beta2", c.optimizer.beta2},
      {"epsilon", c.optimizer.epsilon},
      {"max_epochs", c.optimizer.max_epochs},
      {"tol", c.optimizer.tol},
      {"window", c.optimizer.window},
      {"scale_theta_lr", c.optimizer.scale_theta_lr},
      {"phi_warmup", c.optimizer.phi_warmup},
      {"wall_clock_seconds", c.optimizer.wall_clock_seconds},
      {"divergence_guard", c.optimizer.divergence_guard}};
  j["shots"] = {{"start", c.shots.start},
                {"end", c.shots.end},
                {"profile", to_string(c.shots.profile)},
                {"exact", c.shots.exact}};
  j["gradient"] = {{"method", to_string(c.gradient.method)},
                   {"h_theta", optional_json(c.gradient.h_theta)},
                   {"h_phi", c.gradient.h_phi},
                   {"common_random_numbers", c.gradient.common_random_numbers}};
  j["init"] = {{"theta", optional_json(c.init.theta)},
               {"delta_theta", optional_json(c.init.delta_theta)},
               {"phi", c.init.phi},
               {"theta2", optional_json(c.init.theta2)},
               {"delta_theta2", optional_json(c.init.delta_theta2)}};
  j["cascade"] = {{"n_sequence", c.cascade.n_sequence},
                  {"g_min", c.cascade.g_min},
                  {"probe_evaluations", c.cascade.probe_evaluations},
                  {"max_epochs", c.cascade.max_epochs}};
  j["baseline"] = {{"total_time", c.baseline.total_time},
                   {"steps", c.baseline.steps},
                   {"shots_per_step", c.baseline.shots_per_step}};
  j["multiparam"] = {{"trotter_steps", c.multiparam.trotter_steps},
                     {"rk4_steps", c.multiparam.rk4_steps},
                     {"fix_theta2", c.multiparam.fix_theta2}};
  return j;
}

}  // namespace vista
