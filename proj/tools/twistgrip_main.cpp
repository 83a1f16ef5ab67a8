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

// Command-line front end: runs scenario configs, validates them, and
// regenerates the reference tables and profiles. Exit codes: 0 all targeted
// rows pass, 1 any failure (bad config, fault, failed cell), 2 usage error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "twistgrip/scenario.hpp"
#include "twistgrip/version.hpp"

namespace {

namespace fs = std::filesystem;
using twistgrip::ConfigError;
using twistgrip::ReportFormat;
using twistgrip::ScenarioConfig;

struct CommonOptions {
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string format = "structured";
};

std::string join_out(const std::string& dir, const std::string& name) {
  fs::path p(name);
  if (p.is_absolute()) return name;
  return (fs::path(dir) / p).string();
}

int execute(ScenarioConfig cfg, const CommonOptions& options) {
  if (options.seed.has_value()) cfg.motor.seed = *options.seed;
  const auto format = options.format == "csv" ? ReportFormat::kCsv
                                              : ReportFormat::kStructured;
  const auto result = twistgrip::run_scenario(cfg);
  fs::create_directories(options.out_dir);
  if (twistgrip::scenario_emits_trace(cfg.kind)) {
    twistgrip::write_trace_csv(result.trace,
                               join_out(options.out_dir, cfg.trace_path));
  }
  std::string report_path = cfg.report_path;
  if (format == ReportFormat::kCsv &&
      report_path.size() > 5 &&
      report_path.substr(report_path.size() - 5) == ".json") {
    report_path = report_path.substr(0, report_path.size() - 5) + ".csv";
  }
  twistgrip::emit_report(result.report, format,
                         join_out(options.out_dir, report_path));
  std::cout << twistgrip::report_summary(result.report);
  return result.report.pass ? 0 : 1;
}

int run_command(const std::string& config_path, const CommonOptions& options) {
  return execute(twistgrip::load_config(config_path), options);
}

int validate_command(const std::string& config_path) {
  const auto cfg = twistgrip::load_config(config_path);
  std::cout << "valid: " << config_path << "\n";
  for (const auto& warning : cfg.warnings) {
    std::cout << "warning: " << warning << "\n";
  }
  std::cout << cfg.emit_resolved();
  return 0;
}

// The reference table/profile scenarios as generated config text; they run
// through exactly the same resolution path as user files.
std::string builtin_config(const std::string& name,
                           const std::string& preload) {
  std::string body = "[scenario]\n";
  if (name == "table1") {
    body += "kind = posture_table\n";
  } else if (name == "table4") {
    body += "kind = payload_table\n";
  } else if (name == "fig5") {
    body += "kind = torque_profile\nduration = 1.5 s\n";
  } else {
    body += "kind = tip_force_sweep\n";
  }
  body += "\n[preload]\nlevel = " + preload + "\n";
  body += "\n[object]\nstiffness = 800 N/rad\n";
  if (name == "table1") {
    body += "\n[motor]\nnoise_sigma = 0.02 N.m\n";
  }
  body += "\n[output]\ntrace = " + name + "_" + preload + "_trace.csv\n";
  body += "report = " + name + "_" + preload + "_report.json\n";
  return body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and control library for a single-actuator gripper "
               "with load-switched grasping and infinite wrist twisting"};
  app.set_version_flag("--version", std::string("twistgrip ") +
                                        twistgrip::kVersion);
  app.require_subcommand(1);

  CommonOptions options;
  std::string config_path;
  std::string preload = "medium";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", options.out_dir, "output directory");
    cmd->add_option("--seed", options.seed, "override the noise seed");
    cmd->add_option("--format", options.format, "report format")
        ->check(CLI::IsMember({"csv", "structured"}));
  };

  auto* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "scenario config file")->required();
  add_common(run);

  auto* validate =
      app.add_subcommand("validate", "check a config and print its resolution");
  validate->add_option("config", config_path, "scenario config file")
      ->required();

  const char* builtin_help[] = {
      "posturing-accuracy table (noiseless + seeded ensemble)",
      "wrap-count payload table",
      "constant-speed three-state torque profile",
      "tip-force vs grasp-torque sweep",
  };
  CLI::App* builtins[4];
  const std::string builtin_names[] = {"table1", "table4", "fig5", "fig9"};
  for (int i = 0; i < 4; ++i) {
    builtins[i] = app.add_subcommand(builtin_names[i], builtin_help[i]);
    builtins[i]
        ->add_option("--preload", preload, "preload level")
        ->check(CLI::IsMember({"low", "medium", "high"}));
    add_common(builtins[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return run_command(config_path, options);
    if (validate->parsed()) return validate_command(config_path);
    for (int i = 0; i < 4; ++i) {
      if (builtins[i]->parsed()) {
        auto cfg = twistgrip::parse_config(
            builtin_config(builtin_names[i], preload),
            builtin_names[i] + ":" + preload);
        return execute(std::move(cfg), options);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
