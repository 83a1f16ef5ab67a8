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

// Closed-form statics of the differential gear train that routes a single
// motor either to the fingers (grasping) or to the rotation unit (twisting).
// Everything here is algebra over immutable value types; there is no time,
// no state, and no I/O. All quantities are SI: meters, newtons,
// newton-meters, radians.

#ifndef TWISTGRIP_MECHANISM_HPP_
#define TWISTGRIP_MECHANISM_HPP_

#include <string>
#include <vector>

namespace twistgrip {

// Lever arms, pitch radii, and lumped transmission ratios of the drive train.
//
// The two-stage double gear (bevel input, spur output) sits between the motor
// pinion and the finger gear; the gearbox housing carries the whole rotation
// unit. g_finger and g_wrist are lumped output/input angle ratios for the two
// motion modes; the unpublished intermediate pitch radii are absorbed into
// them.
struct GripperGeometry {
  double l_2a = 0.010;   // arm from gear-1 axis to the input-mesh force [m]
  double l_2b = 0.018;   // arm from gear-1 axis to the output-mesh force [m]
  double l_2c = 0.014;   // arm from gear-1 axis to the gearbox reaction [m]
  double r_2in = 0.012;  // pitch radius, double-gear bevel (input) stage [m]
  double r_2out = 0.010; // pitch radius, double-gear spur (output) stage [m]
  double r_4 = 0.010;    // pitch radius of the finger gear [m]
  double l_tip = 0.050;  // arm from finger-gear axis to fingertip contact [m]
  double r_f = 0.010;    // finger radius, used for lift-speed coordination [m]
  double g_finger = 1.0; // finger angle change per motor angle change
  double g_wrist = 1.0;  // rotation-unit angle change per motor angle change

  // Returns one message per violated constraint; empty when valid.
  std::vector<std::string> validation_errors() const;
  // Throws std::invalid_argument listing every violation.
  void validate() const;

  // Dimensions of the physical prototype drive train. l_tip, l_2b, r_2in,
  // r_2out and r_4 are the published values; l_2a, l_2c, r_f and the lumped
  // ratios are not published and carry documented defaults.
  static GripperGeometry reference();
};

// Friction brake on the gearbox. Its static torque sets where grasping hands
// over to twisting; its kinetic torque sets the constant motor torque while
// the rotation unit spins.
struct PreloadSpec {
  enum class Level { kLow, kMedium, kHigh, kCustom };

  Level level = Level::kCustom;
  double tau_pl_max_sf = 0.0;  // max static friction torque on gearbox [N.m]
  double tau_pl_kf = 0.0;      // kinetic friction torque while twisting [N.m]

  std::vector<std::string> validation_errors() const;
  void validate() const;

  // Preload calibrated so that the switch to twisting happens at the given
  // motor torque for this geometry (inverts the threshold relation).
  // kf_ratio is the kinetic/static friction ratio of the brake pad.
  static PreloadSpec for_threshold(const GripperGeometry& geom, Level level,
                                   double tau_th, double kf_ratio = 0.95);
  // The three prototype settings. The medium switching threshold (1.1 N.m)
  // is the published value; low and high are scaled by the measured no-twist
  // payload ratios (2.2 : 3.9 : 5.7).
  static PreloadSpec low(const GripperGeometry& geom);
  static PreloadSpec medium(const GripperGeometry& geom);
  static PreloadSpec high(const GripperGeometry& geom);
};

const char* to_string(PreloadSpec::Level level);

// Motor-torque switching thresholds for the three preloader settings [N.m].
inline constexpr double kThresholdTorqueLow = 0.62;
inline constexpr double kThresholdTorqueMedium = 1.1;
inline constexpr double kThresholdTorqueHigh = 1.61;

// Measured no-twist payloads at the three preloader settings [N].
inline constexpr double kAntipodalPayloadLow = 2.2;
inline constexpr double kAntipodalPayloadMedium = 3.9;
inline constexpr double kAntipodalPayloadHigh = 5.7;

// Tangential and housing reaction forces on the double gear, in equilibrium
// with a given fingertip force.
struct Gear2Forces {
  double f_2in = 0.0;   // from the motor pinion [N]
  double f_2out = 0.0;  // from the finger-side gear [N]
  double f_gb = 0.0;    // from the gearbox housing [N]
};

// Motor torque per unit fingertip force [m]:
// alpha1 = l_tip * l_2b * r_2out / (r_2in * r_4).
double alpha1(const GripperGeometry& geom);

// Gearbox reaction force per unit fingertip force [-]:
// alpha2 = l_tip * (l_2a * r_2out + l_2b * r_2in) / (l_2c * r_2in * r_4).
double alpha2(const GripperGeometry& geom);

// Equilibrium forces on the double gear for fingertip force f_tip.
Gear2Forces solve_gear2(const GripperGeometry& geom, double f_tip);

// tau_m = alpha1 * f_tip and its exact inverse.
double motor_torque_from_tip_force(const GripperGeometry& geom, double f_tip);
double tip_force_from_motor_torque(const GripperGeometry& geom, double tau_m);

// Torque on the preloaded gearbox from the antipodal double-gear pair:
// tau_gb = 2 * l_2c * alpha2 * f_tip.
double gearbox_torque(const GripperGeometry& geom, double f_tip);

// Motor torque at which the rotation unit breaks loose (twisting activates):
// tau_th = alpha1 / (2 * l_2c * alpha2) * tau_pl_max_sf.
double twist_threshold_torque(const GripperGeometry& geom,
                              const PreloadSpec& preload);

// Constant motor torque while the rotation unit spins against the kinetic
// brake friction: tau_const = alpha1 * tau_pl_kf / (2 * l_2c * alpha2).
double twist_const_torque(const GripperGeometry& geom,
                          const PreloadSpec& preload);

// External torque still available at the wrist during twisting before the
// motor saturates. Throws std::domain_error if tau_m_max < tau_const.
double available_twist_torque(double tau_m_max, double tau_const);

// Fingertip force sustained while twisting (kinetic brake level):
// f_tip = tau_pl_kf / (2 * l_2c * alpha2).
double twist_tip_force(const GripperGeometry& geom, const PreloadSpec& preload);

// Fingertip force above which the static brake slips:
// f_tip = tau_pl_max_sf / (2 * l_2c * alpha2).
double static_limit_tip_force(const GripperGeometry& geom,
                              const PreloadSpec& preload);

}  // namespace twistgrip

#endif  // TWISTGRIP_MECHANISM_HPP_
