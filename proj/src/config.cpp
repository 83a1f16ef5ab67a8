// Copyright 2026 The Twistgrip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twistgrip/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "twistgrip/capstan.hpp"

namespace twistgrip {

namespace {

constexpr double kPi = std::numbers::pi;

enum class ValueKind {
  kLength,
  kForce,
  kTorque,
  kAngle,
  kAngVel,
  kTime,
  kStiffness,
  kDimensionless,
  kInteger,
  kBoolean,
  kToken,
  kPath,
};

struct UnitDef {
  const char* name;
  double factor;
};

const std::vector<UnitDef>& units_for(ValueKind kind) {
  static const std::vector<UnitDef> length{{"m", 1.0}, {"mm", 1e-3},
                                           {"cm", 1e-2}};
  static const std::vector<UnitDef> force{{"N", 1.0}, {"kN", 1e3}};
  static const std::vector<UnitDef> torque{
      {"N.m", 1.0}, {"Nm", 1.0}, {"mN.m", 1e-3}, {"mNm", 1e-3}};
  static const std::vector<UnitDef> angle{{"rad", 1.0}, {"deg", kPi / 180.0}};
  static const std::vector<UnitDef> angvel{
      {"rad/s", 1.0}, {"deg/s", kPi / 180.0}, {"rpm", 2.0 * kPi / 60.0}};
  static const std::vector<UnitDef> time{{"s", 1.0}, {"ms", 1e-3}};
  static const std::vector<UnitDef> stiffness{{"N/rad", 1.0},
                                              {"N/deg", 180.0 / kPi}};
  static const std::vector<UnitDef> none{};
  switch (kind) {
    case ValueKind::kLength: return length;
    case ValueKind::kForce: return force;
    case ValueKind::kTorque: return torque;
    case ValueKind::kAngle: return angle;
    case ValueKind::kAngVel: return angvel;
    case ValueKind::kTime: return time;
    case ValueKind::kStiffness: return stiffness;
    default: return none;
  }
}

const char* unit_hint(ValueKind kind) {
  switch (kind) {
    case ValueKind::kLength: return "m|mm|cm";
    case ValueKind::kForce: return "N|kN";
    case ValueKind::kTorque: return "N.m|Nm|mN.m";
    case ValueKind::kAngle: return "rad|deg";
    case ValueKind::kAngVel: return "rad/s|deg/s|rpm";
    case ValueKind::kTime: return "s|ms";
    case ValueKind::kStiffness: return "N/rad|N/deg";
    default: return "";
  }
}

bool is_dimensioned(ValueKind kind) {
  switch (kind) {
    case ValueKind::kLength:
    case ValueKind::kForce:
    case ValueKind::kTorque:
    case ValueKind::kAngle:
    case ValueKind::kAngVel:
    case ValueKind::kTime:
    case ValueKind::kStiffness:
      return true;
    default:
      return false;
  }
}

struct KeySpec {
  const char* name;  // "section.key"
  ValueKind kind;
  bool allow_auto = false;
};

const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> keys{
      {"scenario.kind", ValueKind::kToken},
      {"scenario.release", ValueKind::kBoolean},
      {"scenario.duration", ValueKind::kTime},
      {"scenario.ensemble", ValueKind::kInteger},
      {"geometry.l_2a", ValueKind::kLength},
      {"geometry.l_2b", ValueKind::kLength},
      {"geometry.l_2c", ValueKind::kLength},
      {"geometry.r_2in", ValueKind::kLength},
      {"geometry.r_2out", ValueKind::kLength},
      {"geometry.r_4", ValueKind::kLength},
      {"geometry.l_tip", ValueKind::kLength},
      {"geometry.r_f", ValueKind::kLength},
      {"geometry.g_finger", ValueKind::kDimensionless},
      {"geometry.g_wrist", ValueKind::kDimensionless},
      {"preload.level", ValueKind::kToken},
      {"preload.kf_ratio", ValueKind::kDimensionless},
      {"preload.tau_pl_max_sf", ValueKind::kTorque},
      {"preload.tau_pl_kf", ValueKind::kTorque},
      {"object.contact_angle", ValueKind::kAngle},
      {"object.stiffness", ValueKind::kStiffness},
      {"object.mu", ValueKind::kDimensionless},
      {"object.mu_tip", ValueKind::kDimensionless},
      {"object.weight", ValueKind::kForce},
      {"motor.omega", ValueKind::kAngVel},
      {"motor.tau_max", ValueKind::kTorque},
      {"motor.noise_sigma", ValueKind::kTorque},
      {"motor.seed", ValueKind::kInteger},
      {"controller.tau_detect", ValueKind::kTorque, true},
      {"controller.tau_g_target", ValueKind::kTorque},
      {"controller.theta_tw_target", ValueKind::kAngle, true},
      {"controller.dt", ValueKind::kTime},
      {"controller.debounce", ValueKind::kInteger},
      {"controller.theta_budget", ValueKind::kAngle},
      {"controller.cal_window", ValueKind::kInteger},
      {"controller.cal_settle", ValueKind::kInteger},
      {"capstan.f_g", ValueKind::kForce, true},
      {"capstan.wrap_step", ValueKind::kDimensionless},
      {"output.trace", ValueKind::kPath},
      {"output.report", ValueKind::kPath},
  };
  return keys;
}

const KeySpec* find_spec(const std::string& name) {
  for (const auto& spec : schema()) {
    if (name == spec.name) return &spec;
  }
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

struct RawEntry {
  std::string value;
  int line = 0;
  bool consumed = false;
};

// Raw key-value store plus the issue list shared across resolution steps.
class Resolver {
 public:
  Resolver(const std::string& text, const std::string& source,
           ScenarioConfig& config)
      : source_(source), config_(config) {
    parse_lines(text);
  }

  void issue(const std::string& message) { issues_.push_back(message); }

  void issue_at(int line, const std::string& message) {
    std::ostringstream os;
    os << source_ << ":" << line << ": " << message;
    issues_.push_back(os.str());
  }

  bool has(const std::string& name) {
    return entries_.find(name) != entries_.end();
  }

  bool is_auto(const std::string& name) {
    auto it = entries_.find(name);
    return it != entries_.end() && trim(it->second.value) == "auto";
  }

  // Quantity in canonical units; falls back to `fallback` with the given
  // provenance when absent.
  double quantity(const std::string& name, double fallback,
                  Provenance fallback_provenance) {
    const KeySpec* spec = find_spec(name);
    auto it = entries_.find(name);
    if (it == entries_.end()) {
      config_.provenance[name] = fallback_provenance;
      return fallback;
    }
    it->second.consumed = true;
    config_.provenance[name] = Provenance::kUser;
    const std::string raw = trim(it->second.value);
    const auto tokens = split_ws(raw);
    double number = 0.0;
    if (tokens.empty()) {
      issue_at(it->second.line, name + ": empty value");
      return fallback;
    }
    const char* begin = tokens[0].c_str();
    char* endp = nullptr;
    number = std::strtod(begin, &endp);
    if (endp != begin + tokens[0].size() || !std::isfinite(number)) {
      issue_at(it->second.line, name + ": cannot parse number '" + tokens[0] + "'");
      return fallback;
    }
    if (is_dimensioned(spec->kind)) {
      if (tokens.size() != 2) {
        issue_at(it->second.line,
                 name + ": a unit is required (" + unit_hint(spec->kind) + ")");
        return fallback;
      }
      for (const auto& unit : units_for(spec->kind)) {
        if (tokens[1] == unit.name) return number * unit.factor;
      }
      issue_at(it->second.line, name + ": unknown unit '" + tokens[1] +
                                    "' (expected " + unit_hint(spec->kind) + ")");
      return fallback;
    }
    if (tokens.size() != 1) {
      issue_at(it->second.line, name + ": dimensionless value must be a bare number");
      return fallback;
    }
    return number;
  }

  long integer(const std::string& name, long fallback,
               Provenance fallback_provenance) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
      config_.provenance[name] = fallback_provenance;
      return fallback;
    }
    it->second.consumed = true;
    config_.provenance[name] = Provenance::kUser;
    const std::string raw = trim(it->second.value);
    long value = 0;
    const auto result =
        std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (result.ec != std::errc() || result.ptr != raw.data() + raw.size()) {
      issue_at(it->second.line, name + ": cannot parse integer '" + raw + "'");
      return fallback;
    }
    return value;
  }

  bool boolean(const std::string& name, bool fallback,
               Provenance fallback_provenance) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
      config_.provenance[name] = fallback_provenance;
      return fallback;
    }
    it->second.consumed = true;
    config_.provenance[name] = Provenance::kUser;
    const std::string raw = trim(it->second.value);
    if (raw == "yes" || raw == "true") return true;
    if (raw == "no" || raw == "false") return false;
    issue_at(it->second.line, name + ": expected yes|no, got '" + raw + "'");
    return fallback;
  }

  std::string token(const std::string& name, const std::string& fallback,
                    Provenance fallback_provenance) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
      config_.provenance[name] = fallback_provenance;
      return fallback;
    }
    it->second.consumed = true;
    config_.provenance[name] = Provenance::kUser;
    return trim(it->second.value);
  }

  int line_of(const std::string& name) {
    auto it = entries_.find(name);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void mark_consumed(const std::string& name) {
    auto it = entries_.find(name);
    if (it != entries_.end()) it->second.consumed = true;
  }

  void finish() {
    for (const auto& [name, entry] : entries_) {
      if (!entry.consumed) {
        issue_at(entry.line, "unknown key '" + name + "'");
      }
    }
    if (!issues_.empty()) throw ConfigError(std::move(issues_));
  }

  bool clean() const { return issues_.empty(); }

 private:
  void parse_lines(const std::string& text) {
    std::istringstream is(text);
    std::string raw_line;
    std::string section;
    int line_no = 0;
    while (std::getline(is, raw_line)) {
      ++line_no;
      const auto comment = raw_line.find('#');
      if (comment != std::string::npos) raw_line.erase(comment);
      const std::string line = trim(raw_line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']' || line.size() < 3) {
          issue_at(line_no, "malformed section header '" + line + "'");
          section.clear();
          continue;
        }
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        issue_at(line_no, "expected 'key = value', got '" + line + "'");
        continue;
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (section.empty()) {
        issue_at(line_no, "key '" + key + "' appears outside any section");
        continue;
      }
      const std::string name = section + "." + key;
      if (find_spec(name) == nullptr) {
        // Remember it so finish() reports it with its line, once.
        entries_.emplace(name, RawEntry{value, line_no, false});
        continue;
      }
      auto [it, inserted] = entries_.emplace(name, RawEntry{value, line_no});
      if (!inserted) {
        issue_at(line_no, "duplicate key '" + name + "'");
      }
    }
  }

  std::string source_;
  ScenarioConfig& config_;
  std::map<std::string, RawEntry> entries_;
  std::vector<std::string> issues_;
};

std::optional<ScenarioKind> parse_kind(const std::string& token) {
  if (token == "grasp") return ScenarioKind::kGrasp;
  if (token == "twist_grasp") return ScenarioKind::kTwistGrasp;
  if (token == "calibrate") return ScenarioKind::kCalibrate;
  if (token == "payload_table") return ScenarioKind::kPayloadTable;
  if (token == "tip_force_sweep") return ScenarioKind::kTipForceSweep;
  if (token == "torque_profile") return ScenarioKind::kTorqueProfile;
  if (token == "posture_table") return ScenarioKind::kPostureTable;
  return std::nullopt;
}

bool needs_plant(ScenarioKind kind) {
  return kind != ScenarioKind::kPayloadTable;
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kGrasp: return "grasp";
    case ScenarioKind::kTwistGrasp: return "twist_grasp";
    case ScenarioKind::kCalibrate: return "calibrate";
    case ScenarioKind::kPayloadTable: return "payload_table";
    case ScenarioKind::kTipForceSweep: return "tip_force_sweep";
    case ScenarioKind::kTorqueProfile: return "torque_profile";
    case ScenarioKind::kPostureTable: return "posture_table";
  }
  return "torque_profile";
}

const char* to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::kPublished: return "published";
    case Provenance::kDerived: return "derived";
    case Provenance::kDefault: return "default";
    case Provenance::kUser: return "user";
  }
  return "default";
}

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error([&issues] {
        std::ostringstream os;
        os << "invalid scenario config (" << issues.size() << " issue"
           << (issues.size() == 1 ? "" : "s") << "):";
        for (const auto& i : issues) os << "\n  - " << i;
        return os.str();
      }()),
      issues_(std::move(issues)) {}

ScenarioConfig parse_config(const std::string& text,
                            const std::string& source) {
  ScenarioConfig config;
  config.source = source;
  Resolver r(text, source, config);

  // Scenario section; the kind is the only unconditionally required key.
  bool kind_known = false;
  if (r.has("scenario.kind")) {
    const std::string token =
        r.token("scenario.kind", "", Provenance::kUser);
    const auto kind = parse_kind(token);
    if (kind.has_value()) {
      config.kind = *kind;
      kind_known = true;
    } else {
      r.issue_at(r.line_of("scenario.kind"),
                 "scenario.kind: unknown scenario '" + token +
                     "' (grasp|twist_grasp|calibrate|payload_table|"
                     "tip_force_sweep|torque_profile|posture_table)");
    }
  } else {
    r.issue("missing required key: scenario.kind");
  }
  config.release =
      r.boolean("scenario.release", false, Provenance::kDefault);
  config.duration = r.quantity("scenario.duration", 3.0, Provenance::kDefault);
  config.ensemble = static_cast<int>(
      r.integer("scenario.ensemble", 30, Provenance::kDefault));
  if (!(config.duration > 0.0)) r.issue("scenario.duration must be positive");
  if (config.ensemble < 1) r.issue("scenario.ensemble must be >= 1");

  // Geometry: five published drive-train dimensions, the rest defaults.
  GripperGeometry geom = GripperGeometry::reference();
  geom.l_2a = r.quantity("geometry.l_2a", geom.l_2a, Provenance::kDefault);
  geom.l_2b = r.quantity("geometry.l_2b", geom.l_2b, Provenance::kPublished);
  geom.l_2c = r.quantity("geometry.l_2c", geom.l_2c, Provenance::kDefault);
  geom.r_2in = r.quantity("geometry.r_2in", geom.r_2in, Provenance::kPublished);
  geom.r_2out =
      r.quantity("geometry.r_2out", geom.r_2out, Provenance::kPublished);
  geom.r_4 = r.quantity("geometry.r_4", geom.r_4, Provenance::kPublished);
  geom.l_tip = r.quantity("geometry.l_tip", geom.l_tip, Provenance::kPublished);
  geom.r_f = r.quantity("geometry.r_f", geom.r_f, Provenance::kDefault);
  geom.g_finger =
      r.quantity("geometry.g_finger", geom.g_finger, Provenance::kDefault);
  geom.g_wrist =
      r.quantity("geometry.g_wrist", geom.g_wrist, Provenance::kDefault);
  config.geometry = geom;
  const auto geometry_errors = geom.validation_errors();
  for (const auto& e : geometry_errors) r.issue("geometry: " + e);

  // Preload: named level resolved against the geometry, or explicit torques.
  const std::string level_token =
      r.token("preload.level", "medium", Provenance::kDefault);
  const double kf_ratio =
      r.quantity("preload.kf_ratio", 0.95, Provenance::kDefault);
  PreloadSpec preload;
  bool preload_resolved = false;
  if (!(kf_ratio > 0.0 && kf_ratio <= 1.0)) {
    r.issue("preload.kf_ratio must be in (0, 1]");
  } else if (geometry_errors.empty()) {
    if (level_token == "low" || level_token == "medium" ||
        level_token == "high") {
      const auto level = level_token == "low"    ? PreloadSpec::Level::kLow
                         : level_token == "medium" ? PreloadSpec::Level::kMedium
                                                   : PreloadSpec::Level::kHigh;
      const double tau_th = level_token == "low"    ? kThresholdTorqueLow
                            : level_token == "medium" ? kThresholdTorqueMedium
                                                      : kThresholdTorqueHigh;
      preload = PreloadSpec::for_threshold(geom, level, tau_th, kf_ratio);
      const auto prov = level == PreloadSpec::Level::kMedium
                            ? Provenance::kDerived   // anchored to published 1.1
                            : Provenance::kDerived;  // scaled by payload ratios
      config.provenance["preload.tau_pl_max_sf"] = prov;
      config.provenance["preload.tau_pl_kf"] = prov;
      preload_resolved = true;
    } else if (level_token == "custom") {
      preload.level = PreloadSpec::Level::kCustom;
      if (!r.has("preload.tau_pl_max_sf") || !r.has("preload.tau_pl_kf")) {
        r.issue(
            "custom preload requires preload.tau_pl_max_sf and "
            "preload.tau_pl_kf");
      } else {
        preload_resolved = true;
      }
    } else {
      r.issue("preload.level must be low|medium|high|custom, got '" +
              level_token + "'");
    }
    // Explicit torques override the level-derived values for any label.
    if (r.has("preload.tau_pl_max_sf")) {
      preload.tau_pl_max_sf =
          r.quantity("preload.tau_pl_max_sf", 0.0, Provenance::kUser);
    }
    if (r.has("preload.tau_pl_kf")) {
      preload.tau_pl_kf =
          r.quantity("preload.tau_pl_kf", 0.0, Provenance::kUser);
    }
  } else {
    r.mark_consumed("preload.tau_pl_max_sf");
    r.mark_consumed("preload.tau_pl_kf");
  }
  config.preload = preload;
  if (preload_resolved) {
    for (const auto& e : preload.validation_errors()) r.issue("preload: " + e);
  }

  // Object.
  ObjectModel object;
  object.contact_angle = r.quantity("object.contact_angle",
                                    object.contact_angle, Provenance::kDefault);
  if (r.has("object.stiffness")) {
    object.stiffness =
        r.quantity("object.stiffness", object.stiffness, Provenance::kUser);
  } else if (kind_known && needs_plant(config.kind)) {
    // The contact spring has no published value; simulated runs must pin it.
    r.issue("missing required key: object.stiffness (required for scenario '" +
            std::string(to_string(config.kind)) + "')");
  } else {
    config.provenance["object.stiffness"] = Provenance::kDefault;
  }
  object.mu = r.quantity("object.mu", object.mu, Provenance::kPublished);
  object.mu_tip =
      r.quantity("object.mu_tip", object.mu_tip, Provenance::kDerived);
  object.weight = r.quantity("object.weight", object.weight,
                             Provenance::kDefault);
  config.object = object;
  for (const auto& e : object.validation_errors()) r.issue("object: " + e);

  // Motor.
  MotorModel motor;
  motor.omega = r.quantity("motor.omega", motor.omega, Provenance::kDefault);
  motor.tau_max =
      r.quantity("motor.tau_max", motor.tau_max, Provenance::kDefault);
  motor.torque_noise_sigma =
      r.quantity("motor.noise_sigma", motor.torque_noise_sigma,
                 Provenance::kDefault);
  motor.seed = static_cast<std::uint64_t>(
      r.integer("motor.seed", static_cast<long>(motor.seed),
                Provenance::kDefault));
  config.motor = motor;
  for (const auto& e : motor.validation_errors()) r.issue("motor: " + e);

  // Controller.
  ControllerConfig controller;
  controller.dt = r.quantity("controller.dt", 1e-3, Provenance::kDefault);
  controller.debounce = static_cast<int>(
      r.integer("controller.debounce", 3, Provenance::kDefault));
  controller.theta_budget =
      r.quantity("controller.theta_budget", 0.0, Provenance::kDefault);
  controller.cal_window = static_cast<int>(
      r.integer("controller.cal_window", 500, Provenance::kDefault));
  controller.cal_settle = static_cast<int>(
      r.integer("controller.cal_settle", 10, Provenance::kDefault));

  const bool structurally_valid = geometry_errors.empty() &&
                                  preload_resolved &&
                                  preload.validation_errors().empty() &&
                                  object.validation_errors().empty() &&
                                  motor.validation_errors().empty() &&
                                  controller.dt > 0.0;

  const double tau_th =
      structurally_valid ? twist_threshold_torque(geom, preload) : 0.0;
  const double torque_step = structurally_valid
                                 ? alpha1(geom) * object.stiffness *
                                       motor.omega * controller.dt
                                 : 0.0;

  // tau_detect: auto = two torque-quantization steps below the switching
  // threshold (fires reliably without noise, bias within one motor step).
  if (!r.has("controller.tau_detect") || r.is_auto("controller.tau_detect")) {
    r.mark_consumed("controller.tau_detect");
    config.provenance["controller.tau_detect"] = Provenance::kDerived;
    if (structurally_valid) {
      controller.tau_detect =
          tau_th > 0.0 ? std::max(tau_th - 2.0 * torque_step, 0.0) : 0.0;
      if (tau_th > 0.0 && controller.tau_detect <= 0.0) {
        r.issue(
            "controller.tau_detect (auto) resolves to zero: the torque rise "
            "per step exceeds half the switching threshold; reduce "
            "controller.dt, object.stiffness, or motor.omega");
      }
    }
  } else {
    controller.tau_detect =
        r.quantity("controller.tau_detect", 0.0, Provenance::kUser);
  }

  // Grasp target: 0.75 N.m (ten newtons of tip force on the reference
  // drive train), scaled down when the detection threshold sits below it.
  if (r.has("controller.tau_g_target")) {
    controller.tau_g_target =
        r.quantity("controller.tau_g_target", 0.75, Provenance::kUser);
  } else {
    controller.tau_g_target = 0.75;
    config.provenance["controller.tau_g_target"] = Provenance::kDefault;
    if (structurally_valid && controller.tau_detect > 0.0 &&
        controller.tau_g_target >= controller.tau_detect) {
      controller.tau_g_target = 0.75 * controller.tau_detect;
      config.provenance["controller.tau_g_target"] = Provenance::kDerived;
    }
  }

  // theta_tw_target: auto = enough wraps for the hanging weight.
  double f_g = 0.0;
  bool f_g_resolved = false;
  if (!r.has("capstan.f_g") || r.is_auto("capstan.f_g")) {
    r.mark_consumed("capstan.f_g");
    if (structurally_valid) {
      switch (preload.level) {
        case PreloadSpec::Level::kLow:
          f_g = kAntipodalPayloadLow;
          config.provenance["capstan.f_g"] = Provenance::kPublished;
          break;
        case PreloadSpec::Level::kMedium:
          f_g = kAntipodalPayloadMedium;
          config.provenance["capstan.f_g"] = Provenance::kPublished;
          break;
        case PreloadSpec::Level::kHigh:
          f_g = kAntipodalPayloadHigh;
          config.provenance["capstan.f_g"] = Provenance::kPublished;
          break;
        case PreloadSpec::Level::kCustom:
          // Fall back to the slip model at the switching-point tip force.
          f_g = antipodal_payload(static_limit_tip_force(geom, preload),
                                  object.mu_tip, 2);
          config.provenance["capstan.f_g"] = Provenance::kDerived;
          break;
      }
      f_g_resolved = true;
    }
  } else {
    f_g = r.quantity("capstan.f_g", 0.0, Provenance::kUser);
    f_g_resolved = true;
    if (!(f_g > 0.0)) r.issue("capstan.f_g must be strictly positive");
  }
  config.f_g = f_g;
  config.wrap_step =
      r.quantity("capstan.wrap_step", 0.5, Provenance::kDefault);
  if (!(config.wrap_step > 0.0)) {
    r.issue("capstan.wrap_step must be strictly positive");
  }

  if (!r.has("controller.theta_tw_target") ||
      r.is_auto("controller.theta_tw_target")) {
    r.mark_consumed("controller.theta_tw_target");
    config.provenance["controller.theta_tw_target"] = Provenance::kDerived;
    if (config.kind == ScenarioKind::kTwistGrasp && object.weight > 0.0 &&
        f_g_resolved && f_g > 0.0 && config.wrap_step > 0.0 &&
        object.mu > 0.0 && object.mu < 1.0) {
      const double wraps =
          wraps_required(object.weight, f_g, object.mu, config.wrap_step);
      controller.theta_tw_target = 2.0 * kPi * wraps;
    } else {
      controller.theta_tw_target = 0.0;
    }
  } else {
    controller.theta_tw_target =
        r.quantity("controller.theta_tw_target", 0.0, Provenance::kUser);
  }
  config.controller = controller;

  // Relational checks and advisory warnings once the plant can exist.
  if (structurally_valid && r.clean()) {
    Plant plant(geom, preload, object, motor);
    for (const auto& e : controller.validation_errors(plant)) {
      r.issue("controller: " + e);
    }
    if (torque_step >= tau_th && tau_th > 0.0) {
      config.warnings.push_back(
          "one sample step covers the whole loaded-torque range: the loaded "
          "state may never be observed (reduce controller.dt, "
          "object.stiffness, or motor.omega)");
    }
    if (tau_th > 0.0 && plant.tau_const() <= controller.tau_detect) {
      const double window = tau_th - controller.tau_detect;
      if (window < controller.debounce * torque_step) {
        config.warnings.push_back(
            "twist detection may never confirm: fewer loaded samples above "
            "tau_detect than the debounce length, and the twisting torque "
            "sits below tau_detect");
      }
    }
    if (motor.tau_max < tau_th) {
      config.warnings.push_back(
          "motor saturates below the switching threshold: twisting cannot "
          "activate (stall expected)");
    }
  }

  // Output paths.
  const std::string kind_name = to_string(config.kind);
  config.trace_path = r.token("output.trace", kind_name + "_trace.csv",
                              Provenance::kDefault);
  config.report_path = r.token("output.report", kind_name + "_report.json",
                               Provenance::kDefault);

  r.finish();
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError({"cannot open config file: " + path});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::string ScenarioConfig::emit_resolved() const {
  std::ostringstream os;
  os << "[scenario]\n";
  os << "kind = " << to_string(kind) << "\n";
  os << "release = " << (release ? "yes" : "no") << "\n";
  os << "duration = " << fmt_double(duration) << " s\n";
  os << "ensemble = " << ensemble << "\n";
  os << "\n[geometry]\n";
  os << "l_2a = " << fmt_double(geometry.l_2a) << " m\n";
  os << "l_2b = " << fmt_double(geometry.l_2b) << " m\n";
  os << "l_2c = " << fmt_double(geometry.l_2c) << " m\n";
  os << "r_2in = " << fmt_double(geometry.r_2in) << " m\n";
  os << "r_2out = " << fmt_double(geometry.r_2out) << " m\n";
  os << "r_4 = " << fmt_double(geometry.r_4) << " m\n";
  os << "l_tip = " << fmt_double(geometry.l_tip) << " m\n";
  os << "r_f = " << fmt_double(geometry.r_f) << " m\n";
  os << "g_finger = " << fmt_double(geometry.g_finger) << "\n";
  os << "g_wrist = " << fmt_double(geometry.g_wrist) << "\n";
  os << "\n[preload]\n";
  os << "level = " << to_string(preload.level) << "\n";
  os << "tau_pl_max_sf = " << fmt_double(preload.tau_pl_max_sf) << " N.m\n";
  os << "tau_pl_kf = " << fmt_double(preload.tau_pl_kf) << " N.m\n";
  os << "\n[object]\n";
  os << "contact_angle = " << fmt_double(object.contact_angle) << " rad\n";
  os << "stiffness = " << fmt_double(object.stiffness) << " N/rad\n";
  os << "mu = " << fmt_double(object.mu) << "\n";
  os << "mu_tip = " << fmt_double(object.mu_tip) << "\n";
  os << "weight = " << fmt_double(object.weight) << " N\n";
  os << "\n[motor]\n";
  os << "omega = " << fmt_double(motor.omega) << " rad/s\n";
  os << "tau_max = " << fmt_double(motor.tau_max) << " N.m\n";
  os << "noise_sigma = " << fmt_double(motor.torque_noise_sigma) << " N.m\n";
  os << "seed = " << motor.seed << "\n";
  os << "\n[controller]\n";
  os << "tau_detect = " << fmt_double(controller.tau_detect) << " N.m\n";
  os << "tau_g_target = " << fmt_double(controller.tau_g_target) << " N.m\n";
  os << "theta_tw_target = " << fmt_double(controller.theta_tw_target)
     << " rad\n";
  os << "dt = " << fmt_double(controller.dt) << " s\n";
  os << "debounce = " << controller.debounce << "\n";
  os << "theta_budget = " << fmt_double(controller.theta_budget) << " rad\n";
  os << "cal_window = " << controller.cal_window << "\n";
  os << "cal_settle = " << controller.cal_settle << "\n";
  os << "\n[capstan]\n";
  os << "f_g = " << fmt_double(f_g) << " N\n";
  os << "wrap_step = " << fmt_double(wrap_step) << "\n";
  os << "\n[output]\n";
  os << "trace = " << trace_path << "\n";
  os << "report = " << report_path << "\n";
  return os.str();
}

}  // namespace twistgrip
