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

#include "twistgrip/capstan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace twistgrip {

namespace {

constexpr double kPi = std::numbers::pi;

void check_mu(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    std::ostringstream os;
    os << "mu must be in (0, 1), got " << mu;
    throw std::domain_error(os.str());
  }
}

void check_wraps(double n) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    std::ostringstream os;
    os << "wrap count must be finite and >= 0, got " << n;
    throw std::domain_error(os.str());
  }
}

// One classical RK4 sweep of f' = mu * f over [theta0, theta1], appending a
// sample at the end of every internal step.
double integrate_section(double mu, double f0, double theta0, double theta1,
                         char section, std::size_t min_samples,
                         std::vector<TensionProfile::Sample>& out) {
  const double span = theta1 - theta0;
  // Step small enough that the global error stays well under 1e-6 relative.
  const std::size_t steps = std::max<std::size_t>(
      min_samples, static_cast<std::size_t>(std::ceil(span / 0.01)));
  const double h = span / static_cast<double>(steps);
  double f = f0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double k1 = mu * f;
    const double k2 = mu * (f + 0.5 * h * k1);
    const double k3 = mu * (f + 0.5 * h * k2);
    const double k4 = mu * (f + h * k3);
    f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double theta = theta0 + h * static_cast<double>(i + 1);
    out.push_back({theta, f, section});
  }
  return f;
}

}  // namespace

void TwistGraspQuery::validate() const {
  if (!(f_g > 0.0) || !std::isfinite(f_g)) {
    std::ostringstream os;
    os << "f_g must be strictly positive, got " << f_g;
    throw std::domain_error(os.str());
  }
  check_mu(mu);
  check_wraps(n);
}

double amplification(double mu, double n) {
  check_mu(mu);
  check_wraps(n);
  if (n == 0.0) return 1.0;
  return std::exp(-0.5 * mu * kPi) * std::exp(2.0 * mu * kPi * n);
}

TwistGraspResult twist_payload(const TwistGraspQuery& query) {
  query.validate();
  TwistGraspResult result;
  result.beta1 = std::exp(-0.5 * query.mu * kPi);
  result.beta2 = std::exp(2.0 * query.mu * kPi);
  result.amplification = amplification(query.mu, query.n);
  result.f_obj = result.amplification * query.f_g;
  if (query.n >= 2.0) {
    result.f_b = std::exp(2.0 * query.mu * (query.n - 1.25) * kPi) * query.f_g;
  }
  return result;
}

TensionProfile tension_profile(const TwistGraspQuery& query,
                               std::size_t samples) {
  query.validate();
  if (query.n < 2.0) {
    std::ostringstream os;
    os << "tension_profile requires n >= 2 (two-section wrap), got "
       << query.n;
    throw std::domain_error(os.str());
  }
  if (samples < 2) {
    throw std::domain_error("tension_profile requires samples >= 2");
  }

  const double theta_b = 2.0 * (query.n - 2.0) * kPi + 1.5 * kPi;
  const double theta_end = 2.0 * (query.n - 1.0) * kPi + 1.5 * kPi;

  TensionProfile profile;
  profile.boundary_theta = theta_b;
  profile.samples.push_back({0.0, query.f_g, 'A'});

  // Split the requested sample budget by arc length across the two legs.
  const std::size_t samples_a = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::round(static_cast<double>(samples) * theta_b / theta_end)));
  const std::size_t samples_b =
      samples > samples_a + 1 ? samples - samples_a - 1 : 1;

  profile.f_b = integrate_section(query.mu, query.f_g, 0.0, theta_b, 'A',
                                  samples_a, profile.samples);
  // The boundary point belongs to section B.
  profile.samples.back().section = 'B';
  profile.f_end = integrate_section(query.mu, profile.f_b, theta_b, theta_end,
                                    'B', samples_b, profile.samples);
  return profile;
}

double wraps_required(double f_obj_target, double f_g, double mu,
                      double step) {
  if (!(f_obj_target > 0.0) || !std::isfinite(f_obj_target)) {
    throw std::domain_error("f_obj_target must be strictly positive");
  }
  if (!(f_g > 0.0) || !std::isfinite(f_g)) {
    throw std::domain_error("f_g must be strictly positive");
  }
  check_mu(mu);
  if (!(step > 0.0)) {
    throw std::domain_error("step must be strictly positive");
  }
  for (long i = 0;; ++i) {
    const double n = static_cast<double>(i) * step;
    if (amplification(mu, n) * f_g >= f_obj_target) return n;
  }
}

double antipodal_payload(double f_tip, double mu_tip, int contacts) {
  if (!(f_tip >= 0.0) || !std::isfinite(f_tip)) {
    throw std::domain_error("f_tip must be finite and >= 0");
  }
  if (!(mu_tip > 0.0)) {
    throw std::domain_error("mu_tip must be strictly positive");
  }
  if (contacts != 1 && contacts != 2) {
    throw std::invalid_argument("contacts must be 1 or 2");
  }
  return static_cast<double>(contacts) * mu_tip * f_tip;
}

}  // namespace twistgrip
