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

// Scenario execution: runs a resolved configuration end to end, producing a
// step-by-step trace and a report that compares computed quantities against
// their targets cell by cell. Outputs are byte-stable for a fixed config and
// seed.

#ifndef TWISTGRIP_SCENARIO_HPP_
#define TWISTGRIP_SCENARIO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "twistgrip/config.hpp"
#include "twistgrip/trace.hpp"

namespace twistgrip {

struct ReportCell {
  std::string id;
  double computed = 0.0;
  std::optional<double> expected;
  double tolerance = 0.0;      // absolute, in the cell's own unit
  double abs_err = 0.0;
  double rel_err = 0.0;
  std::string provenance;      // provenance class of the expected value
  bool pass = true;
  std::string note;
};

struct Report {
  std::string scenario;        // config source name
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<std::string> config_echo;   // "section.key = value [provenance]"
  std::vector<std::string> warnings;
  std::vector<ReportCell> cells;
  bool pass = true;

  void add(ReportCell cell);
};

struct ScenarioResult {
  Report report;
  std::vector<TraceRecord> trace;
};

// Runs the configured scenario. Deterministic for a fixed config and seed.
// Controller faults become failed report rows, not exceptions.
ScenarioResult run_scenario(const ScenarioConfig& config);

// Whether the scenario kind produces a step trace (pure table scenarios
// produce only a report).
bool scenario_emits_trace(ScenarioKind kind);

// Writes the trace in the fixed CSV layout. Throws std::runtime_error on
// I/O failure or when the trace is empty.
void write_trace_csv(const std::vector<TraceRecord>& trace,
                     const std::string& path);

enum class ReportFormat { kStructured, kCsv };

std::string report_to_json(const Report& report);
std::string report_to_csv(const Report& report);
// Human-readable per-cell summary with one pass/fail line per cell.
std::string report_summary(const Report& report);

// Writes the machine-readable report. Throws std::runtime_error with path
// context on I/O failure.
void emit_report(const Report& report, ReportFormat format,
                 const std::string& path);

}  // namespace twistgrip

#endif  // TWISTGRIP_SCENARIO_HPP_
