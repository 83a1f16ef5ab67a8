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

// Tests for the gear-train statics. The equilibrium chain is checked against
// an independent dense linear solve of the moment-balance equations.

#include "twistgrip/mechanism.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <gtest/gtest.h>

namespace twistgrip {
namespace {

// Independent route: assemble the moment balances of the double gear and the
// finger gear as one linear system and solve it, instead of walking the
// closed-form chain.
Gear2Forces solve_gear2_oracle(const GripperGeometry& g, double f_tip) {
  Eigen::Matrix3d a;
  Eigen::Vector3d b;
  // rows: double-gear moment balance, double-gear mesh ratio, finger gear.
  a << g.l_2a, g.l_2b, -g.l_2c,
       g.r_2in, -g.r_2out, 0.0,
       0.0, g.r_4, 0.0;
  b << 0.0, 0.0, g.l_tip * f_tip;
  Eigen::Vector3d x = a.fullPivLu().solve(b);
  return Gear2Forces{x[0], x[1], x[2]};
}

GripperGeometry random_geometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.001, 0.1);
  GripperGeometry g;
  g.l_2a = len(rng);
  g.l_2b = len(rng);
  g.l_2c = len(rng);
  g.r_2in = len(rng);
  g.r_2out = len(rng);
  g.r_4 = len(rng);
  g.l_tip = len(rng);
  g.r_f = len(rng);
  g.g_finger = 1.0;
  g.g_wrist = 1.0;
  return g;
}

TEST(Alpha1Test, ReferenceValue) {
  const auto g = GripperGeometry::reference();
  EXPECT_NEAR(alpha1(g), 0.075, 1e-12);
}

TEST(Alpha1Test, HomogeneousDegreeOne) {
  auto g = GripperGeometry::reference();
  const double base = alpha1(g);
  g.l_2a *= 2.0;
  g.l_2b *= 2.0;
  g.l_2c *= 2.0;
  g.r_2in *= 2.0;
  g.r_2out *= 2.0;
  g.r_4 *= 2.0;
  g.l_tip *= 2.0;
  g.r_f *= 2.0;
  EXPECT_NEAR(alpha1(g), 2.0 * base, 1e-12);
}

TEST(Alpha1Test, CancellationCase) {
  auto g = GripperGeometry::reference();
  g.r_2in = g.r_2out;
  g.l_tip = g.r_4;
  EXPECT_NEAR(alpha1(g), g.l_2b, 1e-15);
}

TEST(Alpha2Test, ReferenceValue) {
  const auto g = GripperGeometry::reference();
  // 0.050 * (0.010*0.010 + 0.018*0.012) / (0.014*0.012*0.010)
  EXPECT_NEAR(alpha2(g), 9.404761904761905, 1e-9);
}

TEST(Alpha2Test, VanishingInputArmLimit) {
  auto g = GripperGeometry::reference();
  g.l_2a = 1e-12;
  const double expected = g.l_tip * g.l_2b / (g.l_2c * g.r_4);
  EXPECT_NEAR(alpha2(g), expected, expected * 1e-9);
}

TEST(Alpha2Test, MatchesLinearSolveRatio) {
  std::mt19937_64 rng(20260810);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_geometry(rng);
    const auto f = solve_gear2(g, 1.0);
    EXPECT_NEAR(f.f_gb, alpha2(g), std::abs(alpha2(g)) * 1e-12);
  }
}

TEST(SolveGear2Test, ZeroForceIsZeroEverywhere) {
  const auto f = solve_gear2(GripperGeometry::reference(), 0.0);
  EXPECT_EQ(f.f_2in, 0.0);
  EXPECT_EQ(f.f_2out, 0.0);
  EXPECT_EQ(f.f_gb, 0.0);
}

TEST(SolveGear2Test, ReferenceUnitForce) {
  const auto f = solve_gear2(GripperGeometry::reference(), 1.0);
  EXPECT_NEAR(f.f_2out, 5.0, 1e-12);
  EXPECT_NEAR(f.f_2in, 4.166666666666667, 1e-12);
}

TEST(SolveGear2Test, MatchesIndependentLinearSolve) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> force(0.0, 100.0);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_geometry(rng);
    const double f_tip = force(rng);
    const auto ours = solve_gear2(g, f_tip);
    const auto oracle = solve_gear2_oracle(g, f_tip);
    const double scale = std::max({1.0, std::abs(oracle.f_2in),
                                   std::abs(oracle.f_2out),
                                   std::abs(oracle.f_gb)});
    EXPECT_NEAR(ours.f_2in, oracle.f_2in, scale * 1e-9);
    EXPECT_NEAR(ours.f_2out, oracle.f_2out, scale * 1e-9);
    EXPECT_NEAR(ours.f_gb, oracle.f_gb, scale * 1e-9);
  }
}

TEST(SolveGear2Test, MomentBalanceResiduals) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> force(0.0, 1000.0);
  for (int i = 0; i < 500; ++i) {
    const auto g = random_geometry(rng);
    const double f_tip = force(rng);
    const auto f = solve_gear2(g, f_tip);
    const double row1 = g.l_2a * f.f_2in + g.l_2b * f.f_2out - g.l_2c * f.f_gb;
    const double row2 = g.r_2in * f.f_2in - g.r_2out * f.f_2out;
    const double scale1 = std::max({std::abs(g.l_2a * f.f_2in),
                                    std::abs(g.l_2b * f.f_2out),
                                    std::abs(g.l_2c * f.f_gb), 1e-30});
    const double scale2 = std::max({std::abs(g.r_2in * f.f_2in),
                                    std::abs(g.r_2out * f.f_2out), 1e-30});
    EXPECT_LE(std::abs(row1), scale1 * 1e-9);
    EXPECT_LE(std::abs(row2), scale2 * 1e-9);
  }
}

TEST(TorqueMapTest, ZeroAndLinearity) {
  const auto g = GripperGeometry::reference();
  EXPECT_EQ(motor_torque_from_tip_force(g, 0.0), 0.0);
  const double one = motor_torque_from_tip_force(g, 1.0);
  EXPECT_NEAR(motor_torque_from_tip_force(g, 2.0), 2.0 * one, 1e-15);
}

TEST(TorqueMapTest, ThresholdTipForceGivesPublishedTorque) {
  const auto g = GripperGeometry::reference();
  // 1.1 / 0.075 = 14.667 N of tip force at the medium switching torque.
  EXPECT_NEAR(motor_torque_from_tip_force(g, 1.1 / 0.075), 1.1, 1e-12);
}

TEST(TorqueMapTest, SweepUpperEndTipForce) {
  const auto g = GripperGeometry::reference();
  EXPECT_NEAR(tip_force_from_motor_torque(g, 1.60), 21.333333333333332,
              1e-9);
}

TEST(TorqueMapTest, RoundTripIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> force(0.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_geometry(rng);
    const double f = force(rng);
    const double back = tip_force_from_motor_torque(
        g, motor_torque_from_tip_force(g, f));
    EXPECT_NEAR(back, f, std::max(f, 1.0) * 1e-12);
  }
}

TEST(GearboxTorqueTest, DefinitionChain) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> force(0.001, 100.0);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_geometry(rng);
    const double f_tip = force(rng);
    const double via_forces = 2.0 * g.l_2c * solve_gear2(g, f_tip).f_gb;
    EXPECT_NEAR(gearbox_torque(g, f_tip), via_forces,
                std::abs(via_forces) * 1e-12);
    // Pure ratio: tau_gb / f_tip is independent of f_tip.
    EXPECT_NEAR(gearbox_torque(g, f_tip) / f_tip, 2.0 * g.l_2c * alpha2(g),
                2.0 * g.l_2c * alpha2(g) * 1e-12);
  }
}

TEST(GearboxTorqueTest, ZeroAndMonotone) {
  const auto g = GripperGeometry::reference();
  EXPECT_EQ(gearbox_torque(g, 0.0), 0.0);
  EXPECT_LT(gearbox_torque(g, 1.0), gearbox_torque(g, 2.0));
}

TEST(TwistThresholdTest, ZeroPreloadGivesZero) {
  const auto g = GripperGeometry::reference();
  PreloadSpec p;
  p.tau_pl_max_sf = 0.0;
  p.tau_pl_kf = 0.0;
  EXPECT_EQ(twist_threshold_torque(g, p), 0.0);
  EXPECT_EQ(twist_const_torque(g, p), 0.0);
}

TEST(TwistThresholdTest, MediumPreloadHitsPublishedThreshold) {
  const auto g = GripperGeometry::reference();
  const auto p = PreloadSpec::medium(g);
  EXPECT_NEAR(twist_threshold_torque(g, p), 1.1, 1.1 * 1e-12);
}

TEST(TwistThresholdTest, ConsistentWithTipForceRoute) {
  const auto g = GripperGeometry::reference();
  const auto p = PreloadSpec::medium(g);
  const double f_at_threshold = static_limit_tip_force(g, p);
  EXPECT_NEAR(motor_torque_from_tip_force(g, f_at_threshold),
              twist_threshold_torque(g, p), 1.1 * 1e-12);
}

TEST(TwistConstTest, EqualsThresholdWhenKineticEqualsStatic) {
  const auto g = GripperGeometry::reference();
  PreloadSpec p;
  p.tau_pl_max_sf = 2.5;
  p.tau_pl_kf = 2.5;
  EXPECT_NEAR(twist_const_torque(g, p), twist_threshold_torque(g, p), 1e-12);
}

TEST(TwistConstTest, NeverExceedsThreshold) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> torque(0.0, 10.0);
  std::uniform_real_distribution<double> ratio(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_geometry(rng);
    PreloadSpec p;
    p.tau_pl_max_sf = torque(rng);
    p.tau_pl_kf = ratio(rng) * p.tau_pl_max_sf;
    EXPECT_LE(twist_const_torque(g, p), twist_threshold_torque(g, p) + 1e-15);
  }
}

TEST(AvailableTwistTorqueTest, SubtractionAndEdge) {
  EXPECT_NEAR(available_twist_torque(2.0, 0.8), 1.2, 1e-15);
  EXPECT_EQ(available_twist_torque(1.5, 1.5), 0.0);
  EXPECT_THROW(available_twist_torque(1.0, 1.5), std::domain_error);
}

TEST(AvailableTwistTorqueTest, PreloadTradeoff) {
  const auto g = GripperGeometry::reference();
  const double tau_max = 2.0;
  const double c_low = twist_const_torque(g, PreloadSpec::low(g));
  const double c_med = twist_const_torque(g, PreloadSpec::medium(g));
  const double c_high = twist_const_torque(g, PreloadSpec::high(g));
  EXPECT_LT(c_low, c_med);
  EXPECT_LT(c_med, c_high);
  const double tw_low = available_twist_torque(tau_max, c_low);
  const double tw_med = available_twist_torque(tau_max, c_med);
  const double tw_high = available_twist_torque(tau_max, c_high);
  EXPECT_GT(tw_low, tw_med);
  EXPECT_GT(tw_med, tw_high);
  EXPECT_NEAR(tw_low + c_low, tau_max, 1e-15);
  EXPECT_NEAR(tw_med + c_med, tau_max, 1e-15);
  EXPECT_NEAR(tw_high + c_high, tau_max, 1e-15);
}

TEST(ValidationTest, GeometryRejectsNonPositiveLengths) {
  auto g = GripperGeometry::reference();
  g.l_2b = 0.0;
  g.r_4 = -1.0;
  const auto errors = g.validation_errors();
  EXPECT_EQ(errors.size(), 2u);
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(ValidationTest, PreloadRejectsKineticAboveStatic) {
  PreloadSpec p;
  p.tau_pl_max_sf = 1.0;
  p.tau_pl_kf = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(ValidationTest, NegativeTipForceRejected) {
  const auto g = GripperGeometry::reference();
  EXPECT_THROW(solve_gear2(g, -1.0), std::domain_error);
  EXPECT_THROW(motor_torque_from_tip_force(g, -0.5), std::domain_error);
}

}  // namespace
}  // namespace twistgrip
