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

#include "twistgrip/plant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twistgrip {

namespace {

void append_errors(std::vector<std::string>& all,
                   const std::vector<std::string>& part, const char* where) {
  for (const auto& e : part) all.push_back(std::string(where) + ": " + e);
}

}  // namespace

std::vector<std::string> ObjectModel::validation_errors() const {
  std::vector<std::string> errors;
  if (!(contact_angle >= 0.0) || !std::isfinite(contact_angle)) {
    errors.push_back("contact_angle must be finite and >= 0");
  }
  if (!(stiffness > 0.0) || !std::isfinite(stiffness)) {
    errors.push_back("stiffness must be strictly positive");
  }
  if (!(mu > 0.0 && mu < 1.0)) {
    errors.push_back("mu must be in (0, 1)");
  }
  if (!(mu_tip > 0.0) || !std::isfinite(mu_tip)) {
    errors.push_back("mu_tip must be strictly positive");
  }
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    errors.push_back("weight must be finite and >= 0");
  }
  return errors;
}

void ObjectModel::validate() const {
  auto errors = validation_errors();
  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid ObjectModel:";
    for (const auto& e : errors) os << "\n  - " << e;
    throw std::invalid_argument(os.str());
  }
}

std::vector<std::string> MotorModel::validation_errors() const {
  std::vector<std::string> errors;
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    errors.push_back("omega must be strictly positive");
  }
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) {
    errors.push_back("tau_max must be strictly positive");
  }
  if (!(torque_noise_sigma >= 0.0) || !std::isfinite(torque_noise_sigma)) {
    errors.push_back("torque_noise_sigma must be finite and >= 0");
  }
  return errors;
}

void MotorModel::validate() const {
  auto errors = validation_errors();
  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid MotorModel:";
    for (const auto& e : errors) os << "\n  - " << e;
    throw std::invalid_argument(os.str());
  }
}

char to_char(PlantMode mode) {
  switch (mode) {
    case PlantMode::kA: return 'A';
    case PlantMode::kB: return 'B';
    case PlantMode::kC: return 'C';
  }
  return '?';
}

Plant::Plant(GripperGeometry geom, PreloadSpec preload, ObjectModel object,
             MotorModel motor)
    : geom_(geom), preload_(preload), object_(object), motor_(motor) {
  std::vector<std::string> errors;
  append_errors(errors, geom_.validation_errors(), "geometry");
  append_errors(errors, preload_.validation_errors(), "preload");
  append_errors(errors, object_.validation_errors(), "object");
  append_errors(errors, motor_.validation_errors(), "motor");
  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid plant configuration:";
    for (const auto& e : errors) os << "\n  - " << e;
    throw std::invalid_argument(os.str());
  }
  alpha1_ = twistgrip::alpha1(geom_);
  tau_th_ = twist_threshold_torque(geom_, preload_);
  tau_const_ = twist_const_torque(geom_, preload_);
  f_static_ = static_limit_tip_force(geom_, preload_);
  f_kinetic_ = twist_tip_force(geom_, preload_);
}

PlantState Plant::initial_state() const { return PlantState{}; }

double Plant::aperture(const PlantState& state) const {
  return object_.contact_angle - finger_angle(state);
}

PlantState Plant::step(const PlantState& state, Direction direction,
                       double dt) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be strictly positive");
  }

  PlantState next = state;
  next.t = state.t + dt;
  next.stalled = false;
  const double d_theta = motor_.omega * dt;

  if (direction == Direction::kForward) {
    const double finger_cand = finger_angle(state) + d_theta;
    if (finger_cand < object_.contact_angle) {
      // A: free closing; idealized zero running torque.
      next.theta_m = state.theta_m + d_theta;
      next.f_tip = 0.0;
      next.tau_m_true = 0.0;
      next.mode = PlantMode::kA;
      return next;
    }
    const double f_cand =
        object_.stiffness * (finger_cand - object_.contact_angle);
    if (f_cand <= f_static_) {
      // B: fingers loaded, rotation unit held by static brake friction.
      const double tau = alpha1_ * f_cand;
      if (tau > motor_.tau_max) {
        next.tau_m_true = motor_.tau_max;
        next.stalled = true;
        return next;
      }
      next.theta_m = state.theta_m + d_theta;
      next.f_tip = f_cand;
      next.tau_m_true = tau;
      next.mode = PlantMode::kB;
      return next;
    }
    // C: brake slips; the whole step's motion goes to the rotation unit and
    // the tip force relaxes to the kinetic level.
    if (tau_const_ > motor_.tau_max) {
      next.tau_m_true = motor_.tau_max;
      next.stalled = true;
      return next;
    }
    next.theta_m = state.theta_m + d_theta;
    next.theta_w = state.theta_w + geom_.g_wrist * d_theta;
    if (f_kinetic_ > 0.0) {
      next.wrap_angle = state.wrap_angle + geom_.g_wrist * d_theta;
    }
    next.f_tip = f_kinetic_;
    next.tau_m_true = tau_const_;
    next.mode = PlantMode::kC;
    return next;
  }

  // Reverse: unwind any wrap first, then open the fingers, hard stop at the
  // fully open angle.
  double remaining = std::min(d_theta, state.theta_m);
  if (remaining <= 0.0) {
    next.f_tip = 0.0;
    next.tau_m_true = 0.0;
    next.mode = PlantMode::kA;
    return next;
  }
  if (tau_const_ > motor_.tau_max && state.wrap_angle > 0.0) {
    next.tau_m_true = -motor_.tau_max;
    next.stalled = true;
    return next;
  }

  double theta_m = state.theta_m;
  double theta_w = state.theta_w;
  double wrap = state.wrap_angle;
  if (wrap > 0.0) {
    const double unwind_motor = wrap / geom_.g_wrist;
    if (remaining < unwind_motor) {
      theta_m -= remaining;
      theta_w -= geom_.g_wrist * remaining;
      wrap -= geom_.g_wrist * remaining;
      remaining = 0.0;
    } else {
      theta_m -= unwind_motor;
      theta_w -= wrap;
      remaining -= unwind_motor;
      wrap = 0.0;
    }
  }
  if (remaining > 0.0) {
    theta_m = theta_m <= remaining ? 0.0 : theta_m - remaining;
  }

  next.theta_m = theta_m;
  next.theta_w = theta_w;
  next.wrap_angle = wrap;
  if (wrap > 0.0) {
    // Still wrapped: reverse twisting against kinetic friction.
    next.f_tip = f_kinetic_;
    next.tau_m_true = -tau_const_;
    next.mode = PlantMode::kC;
    return next;
  }
  const double finger = theta_m - theta_w / geom_.g_wrist;
  const double deflection = finger - object_.contact_angle;
  if (deflection >= 0.0) {
    next.f_tip = object_.stiffness * deflection;
    next.tau_m_true = alpha1_ * next.f_tip;
    next.mode = PlantMode::kB;
  } else {
    next.f_tip = 0.0;
    next.tau_m_true = 0.0;
    next.mode = PlantMode::kA;
  }
  return next;
}

TorqueSensor::TorqueSensor(const MotorModel& motor)
    : sigma_(motor.torque_noise_sigma), rng_(motor.seed) {}

Telemetry TorqueSensor::observe(const PlantState& state) {
  Telemetry telemetry;
  telemetry.t = state.t;
  telemetry.theta_m = state.theta_m;
  telemetry.tau_m_meas =
      sigma_ > 0.0 ? state.tau_m_true + sigma_ * gauss_(rng_) : state.tau_m_true;
  telemetry.mode_tag = to_char(state.mode);
  return telemetry;
}

}  // namespace twistgrip
