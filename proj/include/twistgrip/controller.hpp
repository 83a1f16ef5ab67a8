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

// Torque-monitoring control of the gripper. Every decision is taken from
// telemetry alone (time, motor angle, noisy torque); the controller never
// reads the plant's ground-truth mode or tip force, so any run can be
// replayed from its telemetry log.
//
// The methodology:
//   - grasp: drive forward and stop when the measured torque reaches the
//     grasp target, which must stay below the switching threshold.
//   - twist: drive forward, detect the switch to twisting as a (debounced)
//     torque-threshold crossing at t_c, and stop at t_d once the motor has
//     turned the commanded twist angle past t_c.
//   - calibrate: average the constant twisting torque and invert the brake
//     statics to recover the kinetic preload torque.
//   - release: reverse; the plant unwinds any wrap before the fingers open;
//     stop when the motor is back at the fully open angle.

#ifndef TWISTGRIP_CONTROLLER_HPP_
#define TWISTGRIP_CONTROLLER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "twistgrip/plant.hpp"
#include "twistgrip/trace.hpp"

namespace twistgrip {

enum class ControllerPhase {
  kIdle,
  kClosing,
  kGraspHold,
  kAwaitTwist,
  kTwisting,
  kTwistDone,
  kUnwinding,
  kOpening,
  kDone,
  kFault,
};

const char* to_string(ControllerPhase phase);

enum class ControlStatus {
  kOk,
  kTargetExceedsThreshold,  // grasp torque target not below tau_detect
  kSensingFault,            // torque never rose within the angle budget
  kStallFault,              // motor torque limit hit
  kNeverActivated,          // twisting never detected within the budget
  kInsufficientSamples,     // calibration window never filled
  kIllegalPhase,            // operation not legal from the current phase
};

const char* to_string(ControlStatus status);

struct ControllerConfig {
  double tau_detect = 0.0;      // twist-detection torque threshold [N.m]
  double tau_g_target = 0.75;   // grasp-stop motor torque [N.m]
  double theta_tw_target = 0.0; // commanded twist angle [rad], >= 0
  double dt = 1e-3;             // control / simulation step [s]
  int debounce = 3;             // consecutive samples to confirm detection
  double theta_budget = 0.0;    // max motor angle before giving up [rad];
                                // 0 = derive from plant configuration
  int cal_window = 500;         // samples averaged during calibration
  int cal_settle = 10;          // samples skipped after twist detection

  std::vector<std::string> validation_errors(const Plant& plant) const;
  void validate(const Plant& plant) const;
};

// Two torque-quantization steps below the switching threshold: the tightest
// detection level that still fires reliably on a noiseless run, keeping the
// early-detection bias within one motor step.
double default_tau_detect(const Plant& plant, double dt);

struct GraspResult {
  ControlStatus status = ControlStatus::kOk;
  double stop_torque_meas = 0.0;  // measured torque at the stop sample [N.m]
  double theta_m_stop = 0.0;
};

struct TwistRecord {
  double t_c = 0.0;             // detection time of twist onset [s]
  double t_d = 0.0;             // stop time [s]
  double theta_m_at_tc = 0.0;
  double theta_m_at_td = 0.0;
  double delta_theta_obj = 0.0; // achieved object rotation [rad]
};

struct TwistResult {
  ControlStatus status = ControlStatus::kOk;
  TwistRecord record;
};

struct CalibrationResult {
  ControlStatus status = ControlStatus::kOk;
  PreloadSpec estimate;          // tau_pl_kf recovered; tau_pl_max_sf is set
                                 // to the same value (kinetic lower bound)
  double tau_const_est = 0.0;    // averaged twisting torque [N.m]
  double f_tip_twist_est = 0.0;  // implied tip force while twisting [N]
  int samples = 0;
};

struct ReleaseResult {
  ControlStatus status = ControlStatus::kOk;
};

// Owns one plant, one sensor, and one run. Deterministic given the plant
// seed; emits one trace record per plant step to the optional sink.
class GripperController {
 public:
  GripperController(Plant plant, ControllerConfig config,
                    TraceSink sink = nullptr);

  // Drives forward until the measured torque reaches
  // alpha1 * f_tip_target; never activates twisting when the target is
  // below tau_detect.
  GraspResult grasp_to_force(double f_tip_target);

  // Drives forward, detects twist onset, and stops after the commanded
  // twist angle.
  TwistResult twist_to_angle();

  // Drives into twisting and averages the measured torque to estimate the
  // kinetic preload torque.
  CalibrationResult calibrate_preload();

  // Reverses until fully open (unwind first when wrapped).
  ReleaseResult release();

  ControllerPhase phase() const { return phase_; }
  const Plant& plant() const { return plant_; }
  const PlantState& state() const { return state_; }
  const Telemetry& last_telemetry() const { return telemetry_; }

 private:
  // Steps the plant once, observes, and emits a trace record.
  void advance(Direction direction, double dt);
  bool transition(ControllerPhase next);
  double budget() const;

  Plant plant_;
  ControllerConfig config_;
  TraceSink sink_;
  TorqueSensor sensor_;
  PlantState state_;
  Telemetry telemetry_;
  ControllerPhase phase_ = ControllerPhase::kIdle;
  double last_twist_span_ = 0.0;  // motor angle spent twisting, for release
};

// Stage speed that keeps the object's flexible part slack while it winds
// onto a finger of radius r_f: v = r_f * omega_m.
double lift_speed(const GripperGeometry& geom, double omega_m);

}  // namespace twistgrip

#endif  // TWISTGRIP_CONTROLLER_HPP_
