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

// Scenario configuration: a human-editable key-value text format with
// explicit unit suffixes ("l_tip = 50 mm"), organized in sections. Loading
// applies documented defaults, records where every resolved value came from,
// rejects unknown keys, and reports all violations at once rather than
// stopping at the first.

#ifndef TWISTGRIP_CONFIG_HPP_
#define TWISTGRIP_CONFIG_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistgrip/controller.hpp"
#include "twistgrip/mechanism.hpp"
#include "twistgrip/plant.hpp"

namespace twistgrip {

enum class ScenarioKind {
  kGrasp,
  kTwistGrasp,
  kCalibrate,
  kPayloadTable,
  kTipForceSweep,
  kTorqueProfile,
  kPostureTable,
};

const char* to_string(ScenarioKind kind);

// Where a resolved config value came from.
enum class Provenance {
  kPublished,  // measured/stated value of the physical prototype
  kDerived,    // computed from published values by a documented rule
  kDefault,    // implementer default with no published counterpart
  kUser,       // explicitly set in the config file
};

const char* to_string(Provenance provenance);

// Carries every issue found while loading a config.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kTorqueProfile;
  GripperGeometry geometry;
  PreloadSpec preload;
  ObjectModel object;
  MotorModel motor;
  ControllerConfig controller;  // tau_detect / theta_tw_target resolved

  bool release = false;    // reverse to fully open after grasp/twist
  double duration = 3.0;   // constant-speed run length for profiles [s]
  int ensemble = 30;       // seeded repeats for the posturing table
  double f_g = 0.0;        // antipodal payload feeding the wrap model [N]
  double wrap_step = 0.5;  // wrap-count planning grid

  std::string trace_path;
  std::string report_path;
  std::string source;  // file path or synthetic name

  // provenance["section.key"] for every resolved key.
  std::map<std::string, Provenance> provenance;
  std::vector<std::string> warnings;

  // Canonical text form: every key explicit, canonical units, stable
  // formatting. Loading the emitted text resolves to the same values and
  // emits byte-identical text again.
  std::string emit_resolved() const;
};

// Parses and fully resolves a config from text. `source` is used in
// diagnostics. Throws ConfigError listing every problem.
ScenarioConfig parse_config(const std::string& text,
                            const std::string& source);

// Reads the file and parses it.
ScenarioConfig load_config(const std::string& path);

}  // namespace twistgrip

#endif  // TWISTGRIP_CONFIG_HPP_
