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

// Payload model for twist grasping: a flexible thin object wrapped n times
// around the fingers behaves like a belt on a capstan, so the holdable load
// grows exponentially with the wrap count. The closed forms here give the
// tension at the section boundary and the payload; tension_profile()
// integrates the underlying tension ODE numerically and serves as an
// independent check on the closed forms.

#ifndef TWISTGRIP_CAPSTAN_HPP_
#define TWISTGRIP_CAPSTAN_HPP_

#include <cstddef>
#include <optional>
#include <vector>

namespace twistgrip {

// A twist-grasp configuration: antipodal (no-twist) payload at the wrap
// start, friction coefficient, and wrap count.
struct TwistGraspQuery {
  double f_g = 0.0;  // payload of plain antipodal grasping [N]
  double mu = 0.3;   // friction coefficient, object/object == object/finger
  double n = 0.0;    // wrap count, real, >= 0

  void validate() const;  // throws std::domain_error on violations
};

struct TwistGraspResult {
  double beta1 = 0.0;          // exp(-mu*pi/2)
  double beta2 = 0.0;          // exp(2*mu*pi)
  double amplification = 0.0;  // beta1 * beta2^n (1 for n == 0)
  std::optional<double> f_b;   // tension at the section boundary [N], n >= 2
  double f_obj = 0.0;          // payload after n wraps [N]
};

// Sampled tension along the wrap, from the wrap start (theta = 0) to the
// hanging end. Section A is the inner part of the wrap contacted on both
// surfaces; section B is the outermost turn contacted only on its inside.
struct TensionProfile {
  struct Sample {
    double theta = 0.0;  // angle from wrap start [rad]
    double f_t = 0.0;    // tension [N]
    char section = 'A';  // 'A' or 'B'
  };
  std::vector<Sample> samples;
  double boundary_theta = 0.0;  // A/B boundary: 2(n-2)pi + 3pi/2
  double f_b = 0.0;             // integrated tension at the boundary [N]
  double f_end = 0.0;           // integrated tension at the hanging end [N]
};

// Payload gain of n wraps at friction mu: exp(-mu*pi/2) * exp(2*mu*pi*n)
// for n > 0, and exactly 1 for n = 0 (no wrap, plain antipodal grasp).
// Throws std::domain_error unless 0 < mu < 1 and n >= 0.
double amplification(double mu, double n);

// Closed-form boundary tension and payload for the query. f_b is reported
// only for n >= 2, where the two-section split is defined.
TwistGraspResult twist_payload(const TwistGraspQuery& query);

// Numerically integrates d(f_t)/d(theta) = mu * f_t from f_t(0) = f_g over
// both sections (requires n >= 2) and returns at least `samples` points.
// The endpoint must agree with the closed form to ~1e-6 relative.
TensionProfile tension_profile(const TwistGraspQuery& query,
                               std::size_t samples);

// Smallest wrap count on the grid {0, step, 2*step, ...} whose payload
// reaches f_obj_target.
double wraps_required(double f_obj_target, double f_g, double mu,
                      double step = 0.5);

// Simple antipodal slip model closing the loop from fingertip force to the
// no-twist payload: f_g = contacts * mu_tip * f_tip. Scenario configs may
// inject measured payloads instead of using this.
double antipodal_payload(double f_tip, double mu_tip, int contacts);

}  // namespace twistgrip

#endif  // TWISTGRIP_CAPSTAN_HPP_
