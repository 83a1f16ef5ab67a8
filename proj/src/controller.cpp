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

#include "twistgrip/controller.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace twistgrip {

namespace {

bool is_one_of(ControllerPhase phase, std::initializer_list<ControllerPhase> set) {
  for (auto p : set) {
    if (phase == p) return true;
  }
  return false;
}

}  // namespace

const char* to_string(ControllerPhase phase) {
  switch (phase) {
    case ControllerPhase::kIdle: return "Idle";
    case ControllerPhase::kClosing: return "Closing";
    case ControllerPhase::kGraspHold: return "GraspHold";
    case ControllerPhase::kAwaitTwist: return "AwaitTwist";
    case ControllerPhase::kTwisting: return "Twisting";
    case ControllerPhase::kTwistDone: return "TwistDone";
    case ControllerPhase::kUnwinding: return "Unwinding";
    case ControllerPhase::kOpening: return "Opening";
    case ControllerPhase::kDone: return "Done";
    case ControllerPhase::kFault: return "Fault";
  }
  return "Fault";
}

const char* to_string(ControlStatus status) {
  switch (status) {
    case ControlStatus::kOk: return "ok";
    case ControlStatus::kTargetExceedsThreshold: return "TargetExceedsThreshold";
    case ControlStatus::kSensingFault: return "SensingFault";
    case ControlStatus::kStallFault: return "StallFault";
    case ControlStatus::kNeverActivated: return "NeverActivated";
    case ControlStatus::kInsufficientSamples: return "InsufficientSamples";
    case ControlStatus::kIllegalPhase: return "IllegalPhase";
  }
  return "IllegalPhase";
}

double default_tau_detect(const Plant& plant, double dt) {
  const double torque_step =
      plant.alpha1() * plant.object().stiffness * plant.motor().omega * dt;
  return plant.tau_th() - 2.0 * torque_step;
}

std::vector<std::string> ControllerConfig::validation_errors(
    const Plant& plant) const {
  std::vector<std::string> errors;
  const double tau_th = plant.tau_th();
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    errors.push_back("dt must be strictly positive");
  }
  if (!(theta_tw_target >= 0.0) || !std::isfinite(theta_tw_target)) {
    errors.push_back("theta_tw_target must be finite and >= 0");
  }
  if (!(tau_detect >= 0.0) || !std::isfinite(tau_detect)) {
    errors.push_back("tau_detect must be finite and >= 0");
  }
  if (tau_detect > tau_th * (1.0 + 1e-12)) {
    errors.push_back("tau_detect must not exceed the switching threshold");
  }
  if (tau_th > 0.0) {
    if (!(tau_g_target > 0.0) || !std::isfinite(tau_g_target)) {
      errors.push_back("tau_g_target must be strictly positive");
    }
    if (!(tau_g_target < tau_detect)) {
      errors.push_back("tau_g_target must be below tau_detect");
    }
  }
  if (debounce < 1) errors.push_back("debounce must be >= 1");
  if (!(theta_budget >= 0.0)) errors.push_back("theta_budget must be >= 0");
  if (cal_window < 1) errors.push_back("cal_window must be >= 1");
  if (cal_settle < 0) errors.push_back("cal_settle must be >= 0");
  return errors;
}

void ControllerConfig::validate(const Plant& plant) const {
  auto errors = validation_errors(plant);
  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid ControllerConfig:";
    for (const auto& e : errors) os << "\n  - " << e;
    throw std::invalid_argument(os.str());
  }
}

GripperController::GripperController(Plant plant, ControllerConfig config,
                                     TraceSink sink)
    : plant_(std::move(plant)),
      config_(config),
      sink_(std::move(sink)),
      sensor_(plant_.motor()),
      state_(plant_.initial_state()) {
  config_.validate(plant_);
  telemetry_ = Telemetry{};
}

void GripperController::advance(Direction direction, double dt) {
  state_ = plant_.step(state_, direction, dt);
  telemetry_ = sensor_.observe(state_);
  if (sink_) {
    TraceRecord record;
    record.t = state_.t;
    record.theta_m = state_.theta_m;
    record.omega = direction == Direction::kForward ? plant_.motor().omega
                                                    : -plant_.motor().omega;
    record.tau_m_true = state_.tau_m_true;
    record.tau_m_meas = telemetry_.tau_m_meas;
    record.mode = to_char(state_.mode);
    record.theta_w = state_.theta_w;
    record.aperture = plant_.aperture(state_);
    record.f_tip = state_.f_tip;
    record.controller_phase = to_string(phase_);
    sink_(record);
  }
}

bool GripperController::transition(ControllerPhase next) {
  using P = ControllerPhase;
  bool legal = false;
  switch (next) {
    case P::kClosing:
      legal = is_one_of(phase_, {P::kIdle, P::kDone});
      break;
    case P::kGraspHold:
      legal = phase_ == P::kClosing;
      break;
    case P::kAwaitTwist:
      legal = is_one_of(phase_, {P::kIdle, P::kClosing, P::kGraspHold, P::kDone});
      break;
    case P::kTwisting:
      legal = phase_ == P::kAwaitTwist;
      break;
    case P::kTwistDone:
      legal = phase_ == P::kTwisting;
      break;
    case P::kUnwinding:
      legal = is_one_of(phase_, {P::kGraspHold, P::kTwistDone});
      break;
    case P::kOpening:
      legal = is_one_of(phase_, {P::kGraspHold, P::kTwistDone, P::kUnwinding});
      break;
    case P::kDone:
      legal = is_one_of(phase_, {P::kOpening, P::kUnwinding});
      break;
    case P::kIdle:
    case P::kFault:
      legal = true;
      break;
  }
  phase_ = legal ? next : ControllerPhase::kFault;
  return legal;
}

double GripperController::budget() const {
  if (config_.theta_budget > 0.0) return config_.theta_budget;
  const auto& object = plant_.object();
  const double squeeze = plant_.f_tip_static_limit() / object.stiffness;
  return object.contact_angle + squeeze +
         config_.theta_tw_target / plant_.geometry().g_wrist + 1.0;
}

GraspResult GripperController::grasp_to_force(double f_tip_target) {
  if (!(f_tip_target >= 0.0) || !std::isfinite(f_tip_target)) {
    throw std::domain_error("f_tip_target must be finite and >= 0");
  }
  GraspResult result;
  const double tau_target = plant_.alpha1() * f_tip_target;
  if (tau_target >= config_.tau_detect && plant_.tau_th() > 0.0) {
    result.status = ControlStatus::kTargetExceedsThreshold;
    return result;
  }
  if (!transition(ControllerPhase::kClosing)) {
    result.status = ControlStatus::kIllegalPhase;
    return result;
  }
  const double theta_limit = budget();
  while (state_.theta_m < theta_limit) {
    advance(Direction::kForward, config_.dt);
    if (telemetry_.tau_m_meas >= plant_.motor().tau_max) {
      transition(ControllerPhase::kFault);
      result.status = ControlStatus::kStallFault;
      return result;
    }
    if (telemetry_.tau_m_meas >= tau_target) {
      transition(ControllerPhase::kGraspHold);
      result.stop_torque_meas = telemetry_.tau_m_meas;
      result.theta_m_stop = state_.theta_m;
      return result;
    }
  }
  transition(ControllerPhase::kFault);
  result.status = ControlStatus::kSensingFault;
  return result;
}

TwistResult GripperController::twist_to_angle() {
  TwistResult result;
  if (!transition(ControllerPhase::kAwaitTwist)) {
    result.status = ControlStatus::kIllegalPhase;
    return result;
  }
  const double theta_w_ref = state_.theta_w;
  const double theta_limit = budget();
  const double span = config_.theta_tw_target / plant_.geometry().g_wrist;

  int run_length = 0;
  bool confirmed = false;
  double t_candidate = 0.0;
  double theta_candidate = 0.0;

  while (state_.theta_m < theta_limit) {
    advance(Direction::kForward, config_.dt);
    const double meas = telemetry_.tau_m_meas;
    if (!confirmed) {
      if (meas >= plant_.motor().tau_max) {
        transition(ControllerPhase::kFault);
        result.status = ControlStatus::kStallFault;
        return result;
      }
      if (meas >= config_.tau_detect) {
        if (run_length == 0) {
          t_candidate = telemetry_.t;
          theta_candidate = telemetry_.theta_m;
        }
        ++run_length;
        if (run_length >= config_.debounce) {
          confirmed = true;
          transition(ControllerPhase::kTwisting);
          result.record.t_c = t_candidate;
          result.record.theta_m_at_tc = theta_candidate;
        }
      } else {
        run_length = 0;
      }
    }
    if (confirmed &&
        state_.theta_m - result.record.theta_m_at_tc >= span) {
      transition(ControllerPhase::kTwistDone);
      result.record.t_d = state_.t;
      result.record.theta_m_at_td = state_.theta_m;
      result.record.delta_theta_obj = state_.theta_w - theta_w_ref;
      last_twist_span_ = result.record.theta_m_at_td - result.record.theta_m_at_tc;
      return result;
    }
  }
  transition(ControllerPhase::kFault);
  result.status = ControlStatus::kNeverActivated;
  return result;
}

CalibrationResult GripperController::calibrate_preload() {
  CalibrationResult result;
  if (!transition(ControllerPhase::kAwaitTwist)) {
    result.status = ControlStatus::kIllegalPhase;
    return result;
  }
  // Budget generous enough for the averaging window on top of the approach.
  const double window_angle =
      plant_.motor().omega * config_.dt *
      static_cast<double>(config_.cal_window + config_.cal_settle + 1);
  const double theta_limit = budget() + window_angle;

  int run_length = 0;
  bool confirmed = false;
  int discard_left = config_.cal_settle;
  int taken = 0;
  double sum = 0.0;

  while (state_.theta_m < theta_limit) {
    advance(Direction::kForward, config_.dt);
    const double meas = telemetry_.tau_m_meas;
    if (!confirmed) {
      if (meas >= plant_.motor().tau_max) {
        transition(ControllerPhase::kFault);
        result.status = ControlStatus::kStallFault;
        return result;
      }
      if (meas >= config_.tau_detect) {
        ++run_length;
        if (run_length >= config_.debounce) {
          confirmed = true;
          transition(ControllerPhase::kTwisting);
        }
      } else {
        run_length = 0;
      }
      continue;
    }
    if (discard_left > 0) {
      --discard_left;
      continue;
    }
    sum += meas;
    ++taken;
    if (taken >= config_.cal_window) {
      transition(ControllerPhase::kTwistDone);
      const auto& geom = plant_.geometry();
      result.tau_const_est = sum / static_cast<double>(taken);
      result.f_tip_twist_est = result.tau_const_est / plant_.alpha1();
      const double kf = 2.0 * geom.l_2c * alpha2(geom) * result.tau_const_est /
                        plant_.alpha1();
      result.estimate.level = PreloadSpec::Level::kCustom;
      result.estimate.tau_pl_kf = kf;
      result.estimate.tau_pl_max_sf = kf;
      result.samples = taken;
      return result;
    }
  }
  transition(ControllerPhase::kFault);
  result.status = ControlStatus::kInsufficientSamples;
  return result;
}

ReleaseResult GripperController::release() {
  ReleaseResult result;
  if (state_.theta_m == 0.0 &&
      is_one_of(phase_, {ControllerPhase::kIdle, ControllerPhase::kDone})) {
    return result;  // already fully open
  }
  const bool after_twist = phase_ == ControllerPhase::kTwistDone;
  const double theta_start = state_.theta_m;
  // Motor-angle budget standing in for the wrap the controller cannot see.
  const double unwind_span = after_twist ? last_twist_span_ : 0.0;
  if (!transition(after_twist ? ControllerPhase::kUnwinding
                              : ControllerPhase::kOpening)) {
    result.status = ControlStatus::kIllegalPhase;
    return result;
  }
  while (state_.theta_m > 0.0) {
    advance(Direction::kReverse, config_.dt);
    if (telemetry_.tau_m_meas <= -plant_.motor().tau_max) {
      transition(ControllerPhase::kFault);
      result.status = ControlStatus::kStallFault;
      return result;
    }
    if (phase_ == ControllerPhase::kUnwinding &&
        theta_start - state_.theta_m >= unwind_span) {
      transition(ControllerPhase::kOpening);
    }
  }
  transition(ControllerPhase::kDone);
  return result;
}

double lift_speed(const GripperGeometry& geom, double omega_m) {
  if (!(omega_m >= 0.0) || !std::isfinite(omega_m)) {
    throw std::domain_error("omega_m must be finite and >= 0");
  }
  return geom.r_f * omega_m;
}

}  // namespace twistgrip
