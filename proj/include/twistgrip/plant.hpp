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

// Quasi-static plant: the gripper driven at constant motor speed, with a
// linear-spring contact model, the preloader friction switch, and simulated
// torque sensing. Each step routes the motor increment either to the fingers
// (free closing / loaded grasping) or to the rotation unit (twisting),
// reproducing the three observable states:
//
//   A - fingers move freely, motor torque ~ 0
//   B - fingertips loaded, torque rises with the contact spring
//   C - rotation unit spins, torque constant at the kinetic brake level
//
// The plant itself is a pure state-transition function; only the torque
// sensor carries mutable RNG state.

#ifndef TWISTGRIP_PLANT_HPP_
#define TWISTGRIP_PLANT_HPP_

#include <cstdint>
#include <random>

#include "twistgrip/mechanism.hpp"

namespace twistgrip {

// Contact partner of the fingertips. For runs without a grasped object the
// same model describes fingertip-on-fingertip contact at the closed angle.
struct ObjectModel {
  double contact_angle = 0.5;  // motor angle at first fingertip load [rad]
  double stiffness = 800.0;    // contact stiffness in motor-angle space [N/rad]
  double mu = 0.3;             // object/object and object/finger friction
  double mu_tip = 0.133;       // antipodal slip coefficient for f_g
  double weight = 0.0;         // hanging load on the flexible thin part [N]

  std::vector<std::string> validation_errors() const;
  void validate() const;
};

struct MotorModel {
  double omega = 1.0;              // commanded speed magnitude [rad/s]
  double tau_max = 2.0;            // stall / limit torque [N.m]
  double torque_noise_sigma = 0.0; // additive sensing noise sigma [N.m]
  std::uint64_t seed = 1;          // noise seed

  std::vector<std::string> validation_errors() const;
  void validate() const;
};

enum class PlantMode { kA, kB, kC };
enum class Direction { kForward, kReverse };

char to_char(PlantMode mode);

struct PlantState {
  double t = 0.0;           // [s]
  double theta_m = 0.0;     // motor angle, 0 = fully open [rad]
  double theta_w = 0.0;     // rotation-unit (wrist) angle, unbounded [rad]
  double wrap_angle = 0.0;  // accumulated object wrap around the fingers [rad]
  double f_tip = 0.0;       // fingertip normal force [N]
  double tau_m_true = 0.0;  // noiseless motor torque, signed [N.m]
  PlantMode mode = PlantMode::kA;
  bool stalled = false;     // motor would exceed tau_max; motion frozen
};

// What the controller is allowed to see: time, motor angle, noisy torque.
// mode_tag mirrors the ground-truth state for logging; control decisions
// must not read it.
struct Telemetry {
  double t = 0.0;
  double theta_m = 0.0;
  double tau_m_meas = 0.0;
  char mode_tag = 'A';
};

class Plant {
 public:
  // Validates all four models; throws std::invalid_argument listing every
  // violated constraint.
  Plant(GripperGeometry geom, PreloadSpec preload, ObjectModel object,
        MotorModel motor);

  // Fully open, at rest, untwisted.
  PlantState initial_state() const;

  // Advances theta_m by +/- omega*dt and resolves the contact / brake
  // equilibrium. Pure: state in, state out.
  PlantState step(const PlantState& state, Direction direction,
                  double dt) const;

  // Remaining closing angle before fingertip contact, in motor-angle
  // equivalents. Negative values are contact deflection.
  double aperture(const PlantState& state) const;

  // Motor-angle share routed to the fingers so far.
  double finger_angle(const PlantState& state) const {
    return state.theta_m - state.theta_w / geom_.g_wrist;
  }

  const GripperGeometry& geometry() const { return geom_; }
  const PreloadSpec& preload() const { return preload_; }
  const ObjectModel& object() const { return object_; }
  const MotorModel& motor() const { return motor_; }

  double alpha1() const { return alpha1_; }
  double tau_th() const { return tau_th_; }          // switch torque [N.m]
  double tau_const() const { return tau_const_; }    // twisting torque [N.m]
  double f_tip_static_limit() const { return f_static_; }
  double f_tip_twist() const { return f_kinetic_; }  // tip force in C [N]

 private:
  GripperGeometry geom_;
  PreloadSpec preload_;
  ObjectModel object_;
  MotorModel motor_;
  double alpha1_ = 0.0;
  double tau_th_ = 0.0;
  double tau_const_ = 0.0;
  double f_static_ = 0.0;
  double f_kinetic_ = 0.0;
};

// Simulated current-based torque sensing: the true torque plus seeded
// Gaussian noise. Deterministic for a fixed seed.
class TorqueSensor {
 public:
  explicit TorqueSensor(const MotorModel& motor);

  Telemetry observe(const PlantState& state);

 private:
  double sigma_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace twistgrip

#endif  // TWISTGRIP_PLANT_HPP_
