// Copyright 2026 The Lastmile Authors
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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lastmile/control/twist_controller.hpp"
#include "lastmile/core/errors.hpp"
#include "lastmile/sim/plant.hpp"

namespace lastmile::sim {
namespace {

TEST(BrakeMap, InvertsControllerLookupBelowKnee) {
  for (double a = 0.05; a < 1.19; a += 0.01) {
    EXPECT_NEAR(BrakeDecel(control::BrakeLookup(-a)), a, 1e-12) << a;
  }
}

TEST(BrakeMap, ReachesMaxDecelAtFullBrake) {
  VehicleParams p;
  EXPECT_DOUBLE_EQ(BrakeDecel(1.0, p), p.max_decel);
  EXPECT_DOUBLE_EQ(BrakeDecel(2.0, p), p.max_decel);
  double last = 0.0;
  for (double b = 0.0; b <= 1.0; b += 0.001) {
    const double d = BrakeDecel(b, p);
    EXPECT_GE(d, last);
    last = d;
  }
}

TEST(Plant, ConstantSteerTracesCircle) {
  VehicleParams p;
  VehicleState s;
  s.speed = 2.0;
  s.brake_decel = BrakeDecel(0.0, p);
  const double delta = 0.2;
  const double radius = p.wheelbase / std::tan(delta);
  // Throttle just cancels the residual brake drag.
  const double hold = BrakeDecel(0.0, p) / p.throttle_gain;
  // Each step is a chord of length v dt turning by v dt / R, so the
  // vertices lie on the circumscribed circle of that polygon.
  const double ds = 2.0 * 0.02;
  const double chord_radius = ds / (2.0 * std::sin(0.5 * ds / radius));
  EXPECT_NEAR(chord_radius, radius, 1e-5);
  for (int i = 0; i < 2000; ++i) {
    s = StepPlant(s, hold, 0.0, delta * p.steering_ratio, 0.02, p);
    EXPECT_NEAR(std::hypot(s.x, s.y - chord_radius), chord_radius, 1e-9);
  }
  EXPECT_NEAR(s.speed, 2.0, 1e-12);
  EXPECT_NEAR(s.yaw_rate, s.speed / radius, 1e-9);
}

TEST(Plant, StraightLineDistanceMatchesTrapezoid) {
  VehicleState s;
  s = StepPlant(s, 1.0, 0.0, 0.0, 0.05);
  // Brake drag ramps in through the first-order lag.
  const double a = 2.0 - (1.0 - std::exp(-0.05 / 0.43)) * BrakeDecel(0.0);
  EXPECT_NEAR(s.speed, a * 0.05, 1e-12);
  EXPECT_NEAR(s.x, 0.5 * a * 0.05 * 0.05, 1e-12);
}

TEST(Plant, SpeedNeverNegative) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VehicleState s;
  s.speed = 1.0;
  for (int i = 0; i < 5000; ++i) {
    s = StepPlant(s, u(rng) < 0.3 ? u(rng) : 0.0, u(rng), 8.0 * (u(rng) - 0.5), 0.02);
    ASSERT_GE(s.speed, 0.0);
    ASSERT_LE(std::abs(s.steer_angle), VehicleParams{}.max_steer);
  }
}

TEST(Plant, StopsInsideStepWithoutReversing) {
  VehicleState s;
  s.speed = 0.01;
  s.brake_decel = 6.4;
  const VehicleState n = StepPlant(s, 0.0, 1.0, 0.0, 0.02);
  EXPECT_EQ(n.speed, 0.0);
  EXPECT_GE(n.x, 0.0);
  EXPECT_NEAR(n.x, 0.5 * 0.01 * 0.01 / n.brake_decel, 1e-12);
}

TEST(Plant, RejectsBadInput) {
  VehicleState s;
  EXPECT_THROW(StepPlant(s, 0, 0, 0, 0.0), InvalidStateError);
  EXPECT_THROW(StepPlant(s, 0, 0, 0, 0.2), InvalidStateError);
  EXPECT_THROW(StepPlant(s, NAN, 0, 0, 0.02), InvalidStateError);
  s.x = INFINITY;
  EXPECT_THROW(StepPlant(s, 0, 0, 0, 0.02), InvalidStateError);
}

TEST(Plant, FullBrakeStopFromThree) {
  const StopProfile stop = SimulateFullBrakeStop(3.0);
  EXPECT_NEAR(stop.distance, 1.6, 0.15);
  EXPECT_NEAR(stop.time, 0.8, 0.1);
}

TEST(Plant, StopProfileGrowsWithSpeed) {
  double last_t = 0.0, last_d = 0.0;
  for (double v = 0.5; v <= 6.0; v += 0.5) {
    const StopProfile stop = SimulateFullBrakeStop(v);
    EXPECT_GT(stop.time, last_t);
    EXPECT_GT(stop.distance, last_d);
    last_t = stop.time;
    last_d = stop.distance;
  }
  EXPECT_EQ(SimulateFullBrakeStop(0.0).time, 0.0);
}

TEST(VehicleParams, ValidateRejectsInconsistentGeometry) {
  VehicleParams p;
  EXPECT_NO_THROW(Validate(p));
  p.rear_bumper_x = 4.0;
  EXPECT_THROW(Validate(p), InvalidStateError);
  p = {};
  p.wheelbase = 0.0;
  EXPECT_THROW(Validate(p), InvalidStateError);
}

}  // namespace
}  // namespace lastmile::sim
