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

#include "twistgrip/mechanism.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twistgrip {

namespace {

void require_positive(std::vector<std::string>& errors, double value,
                      const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be strictly positive and finite, got " << value;
    errors.push_back(os.str());
  }
}

[[noreturn]] void throw_errors(const char* what,
                               const std::vector<std::string>& errors) {
  std::ostringstream os;
  os << what << ":";
  for (const auto& e : errors) os << "\n  - " << e;
  throw std::invalid_argument(os.str());
}

void require_nonnegative_force(double f, const char* name) {
  if (!(f >= 0.0) || !std::isfinite(f)) {
    std::ostringstream os;
    os << name << " must be finite and >= 0, got " << f;
    throw std::domain_error(os.str());
  }
}

}  // namespace

std::vector<std::string> GripperGeometry::validation_errors() const {
  std::vector<std::string> errors;
  require_positive(errors, l_2a, "l_2a");
  require_positive(errors, l_2b, "l_2b");
  require_positive(errors, l_2c, "l_2c");
  require_positive(errors, r_2in, "r_2in");
  require_positive(errors, r_2out, "r_2out");
  require_positive(errors, r_4, "r_4");
  require_positive(errors, l_tip, "l_tip");
  require_positive(errors, r_f, "r_f");
  require_positive(errors, g_finger, "g_finger");
  require_positive(errors, g_wrist, "g_wrist");
  return errors;
}

void GripperGeometry::validate() const {
  auto errors = validation_errors();
  if (!errors.empty()) throw_errors("invalid GripperGeometry", errors);
}

GripperGeometry GripperGeometry::reference() { return GripperGeometry{}; }

std::vector<std::string> PreloadSpec::validation_errors() const {
  std::vector<std::string> errors;
  if (!(tau_pl_max_sf >= 0.0) || !std::isfinite(tau_pl_max_sf)) {
    errors.push_back("tau_pl_max_sf must be finite and >= 0");
  }
  if (!(tau_pl_kf >= 0.0) || !std::isfinite(tau_pl_kf)) {
    errors.push_back("tau_pl_kf must be finite and >= 0");
  }
  if (tau_pl_kf > tau_pl_max_sf) {
    errors.push_back("tau_pl_kf must not exceed tau_pl_max_sf");
  }
  return errors;
}

void PreloadSpec::validate() const {
  auto errors = validation_errors();
  if (!errors.empty()) throw_errors("invalid PreloadSpec", errors);
}

PreloadSpec PreloadSpec::for_threshold(const GripperGeometry& geom,
                                       Level level, double tau_th,
                                       double kf_ratio) {
  geom.validate();
  if (!(tau_th >= 0.0) || !std::isfinite(tau_th)) {
    throw std::invalid_argument("tau_th must be finite and >= 0");
  }
  if (!(kf_ratio > 0.0 && kf_ratio <= 1.0)) {
    throw std::invalid_argument("kf_ratio must be in (0, 1]");
  }
  // Invert tau_th = alpha1 / (2 l_2c alpha2) * tau_pl_max_sf.
  const double sf = tau_th * 2.0 * geom.l_2c * alpha2(geom) / alpha1(geom);
  PreloadSpec preload;
  preload.level = level;
  preload.tau_pl_max_sf = sf;
  preload.tau_pl_kf = kf_ratio * sf;
  return preload;
}

PreloadSpec PreloadSpec::low(const GripperGeometry& geom) {
  return for_threshold(geom, Level::kLow, kThresholdTorqueLow);
}

PreloadSpec PreloadSpec::medium(const GripperGeometry& geom) {
  return for_threshold(geom, Level::kMedium, kThresholdTorqueMedium);
}

PreloadSpec PreloadSpec::high(const GripperGeometry& geom) {
  return for_threshold(geom, Level::kHigh, kThresholdTorqueHigh);
}

const char* to_string(PreloadSpec::Level level) {
  switch (level) {
    case PreloadSpec::Level::kLow: return "low";
    case PreloadSpec::Level::kMedium: return "medium";
    case PreloadSpec::Level::kHigh: return "high";
    case PreloadSpec::Level::kCustom: return "custom";
  }
  return "custom";
}

double alpha1(const GripperGeometry& geom) {
  return geom.l_tip * geom.l_2b * geom.r_2out / (geom.r_2in * geom.r_4);
}

double alpha2(const GripperGeometry& geom) {
  return geom.l_tip * (geom.l_2a * geom.r_2out + geom.l_2b * geom.r_2in) /
         (geom.l_2c * geom.r_2in * geom.r_4);
}

Gear2Forces solve_gear2(const GripperGeometry& geom, double f_tip) {
  require_nonnegative_force(f_tip, "f_tip");
  Gear2Forces f;
  // Finger-gear balance, then the two rows of the double-gear balance.
  f.f_2out = geom.l_tip * f_tip / geom.r_4;
  f.f_2in = geom.r_2out / geom.r_2in * f.f_2out;
  f.f_gb = (geom.l_2a * f.f_2in + geom.l_2b * f.f_2out) / geom.l_2c;
  return f;
}

double motor_torque_from_tip_force(const GripperGeometry& geom, double f_tip) {
  require_nonnegative_force(f_tip, "f_tip");
  return alpha1(geom) * f_tip;
}

double tip_force_from_motor_torque(const GripperGeometry& geom, double tau_m) {
  require_nonnegative_force(tau_m, "tau_m");
  return tau_m / alpha1(geom);
}

double gearbox_torque(const GripperGeometry& geom, double f_tip) {
  require_nonnegative_force(f_tip, "f_tip");
  return 2.0 * geom.l_2c * alpha2(geom) * f_tip;
}

double twist_threshold_torque(const GripperGeometry& geom,
                              const PreloadSpec& preload) {
  return alpha1(geom) / (2.0 * geom.l_2c * alpha2(geom)) *
         preload.tau_pl_max_sf;
}

double twist_const_torque(const GripperGeometry& geom,
                          const PreloadSpec& preload) {
  return alpha1(geom) * preload.tau_pl_kf / (2.0 * geom.l_2c * alpha2(geom));
}

double available_twist_torque(double tau_m_max, double tau_const) {
  if (!(tau_m_max >= tau_const)) {
    std::ostringstream os;
    os << "motor cannot sustain twisting: tau_m_max (" << tau_m_max
       << ") < tau_const (" << tau_const << ")";
    throw std::domain_error(os.str());
  }
  return tau_m_max - tau_const;
}

double twist_tip_force(const GripperGeometry& geom,
                       const PreloadSpec& preload) {
  return preload.tau_pl_kf / (2.0 * geom.l_2c * alpha2(geom));
}

double static_limit_tip_force(const GripperGeometry& geom,
                              const PreloadSpec& preload) {
  return preload.tau_pl_max_sf / (2.0 * geom.l_2c * alpha2(geom));
}

}  // namespace twistgrip
