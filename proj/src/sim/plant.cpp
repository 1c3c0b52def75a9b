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

#include "lastmile/sim/plant.hpp"

#include <algorithm>
#include <cmath>

#include "lastmile/core/errors.hpp"
#include "lastmile/core/geometry.hpp"

namespace lastmile::sim {
namespace {

// Controller brake lookup b = 0.28 ln(a) + 0.90, inverted.
constexpr double kLookupGain = 0.28;
constexpr double kLookupOffset = 0.90;

bool AllFinite(const VehicleState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) &&
         std::isfinite(s.heading) && std::isfinite(s.speed) &&
         std::isfinite(s.yaw_rate) && std::isfinite(s.accel) &&
         std::isfinite(s.steer_angle) && std::isfinite(s.brake_decel);
}

}  // namespace

void Validate(const VehicleParams& p) {
  const double positive[] = {p.wheelbase,          p.steering_ratio,
                             p.max_steer,          p.max_decel,
                             p.brake_time_constant, p.brake_knee,
                             p.throttle_gain,      p.lidar_mount_height,
                             p.lidar_offset_x,     p.front_bumper_x,
                             p.half_width,         p.roof_height};
  for (double v : positive) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidStateError("vehicle parameters must be finite and positive");
    }
  }
  if (!std::isfinite(p.rear_bumper_x) || p.rear_bumper_x >= p.front_bumper_x) {
    throw InvalidStateError("rear bumper must lie behind the front bumper");
  }
  if (p.brake_knee > 1.0) {
    throw InvalidStateError("brake knee must be within (0, 1]");
  }
  if (p.max_decel < std::exp((p.brake_knee - kLookupOffset) / kLookupGain)) {
    throw InvalidStateError("max_decel below the lookup curve at the knee");
  }
}

double BrakeDecel(double brake, const VehicleParams& params) {
  brake = std::clamp(brake, 0.0, 1.0);
  const auto lookup_inverse = [](double b) {
    return std::exp((b - kLookupOffset) / kLookupGain);
  };
  if (brake <= params.brake_knee) {
    return std::clamp(lookup_inverse(brake), 0.0, params.max_decel);
  }
  const double at_knee = lookup_inverse(params.brake_knee);
  const double span = 1.0 - params.brake_knee;
  const double frac = span > 0.0 ? (brake - params.brake_knee) / span : 1.0;
  return std::clamp(at_knee + frac * (params.max_decel - at_knee), 0.0,
                    params.max_decel);
}

VehicleState StepPlant(const VehicleState& state, double throttle,
                       double brake, double steer_cmd, double dt,
                       const VehicleParams& params) {
  if (!AllFinite(state) || !std::isfinite(throttle) || !std::isfinite(brake) ||
      !std::isfinite(steer_cmd) || !std::isfinite(dt)) {
    throw InvalidStateError("non-finite plant input");
  }
  if (dt <= 0.0 || dt > 0.1) {
    throw InvalidStateError("plant step dt must lie in (0, 0.1]");
  }
  throttle = std::clamp(throttle, 0.0, 1.0);
  brake = std::clamp(brake, 0.0, 1.0);

  VehicleState next = state;
  next.steer_angle = std::clamp(steer_cmd / params.steering_ratio,
                                -params.max_steer, params.max_steer);

  const double alpha = 1.0 - std::exp(-dt / params.brake_time_constant);
  next.brake_decel =
      state.brake_decel + alpha * (BrakeDecel(brake, params) - state.brake_decel);

  const double v0 = std::max(state.speed, 0.0);
  const double net = params.throttle_gain * throttle - next.brake_decel;

  // Distance covered this step, stopping mid-step when braking through zero.
  double ds = 0.0;
  double v1 = v0 + net * dt;
  if (v1 <= 0.0) {
    v1 = 0.0;
    ds = net < 0.0 ? 0.5 * v0 * v0 / -net : 0.0;
  } else {
    ds = 0.5 * (v0 + v1) * dt;
  }

  const double curvature = std::tan(next.steer_angle) / params.wheelbase;
  const double dtheta = ds * curvature;
  const double mid_heading = state.heading + 0.5 * dtheta;
  next.x = state.x + ds * std::cos(mid_heading);
  next.y = state.y + ds * std::sin(mid_heading);
  next.heading = NormalizeAngle(state.heading + dtheta);
  next.speed = v1;
  next.accel = (v1 - v0) / dt;
  next.yaw_rate = dtheta / dt;
  return next;
}

StopProfile SimulateFullBrakeStop(double speed, const VehicleParams& params,
                                  double dt) {
  StopProfile profile;
  if (!(speed > 0.0)) return profile;
  VehicleState state;
  state.speed = speed;
  state.brake_decel = BrakeDecel(0.0, params);
  // Generous cap; a stop from any sane speed takes far fewer steps.
  const int max_steps = static_cast<int>(120.0 / dt);
  for (int i = 0; i < max_steps && state.speed > 0.0; ++i) {
    const VehicleState next = StepPlant(state, 0.0, 1.0, 0.0, dt, params);
    const double ds = next.x - state.x;
    if (next.speed > 0.0) {
      profile.time += dt;
    } else {
      // Stopped inside this step: ds = v * t / 2 under constant decel.
      profile.time += state.speed > 0.0 ? 2.0 * ds / state.speed : 0.0;
    }
    profile.distance += ds;
    state = next;
  }
  return profile;
}

}  // namespace lastmile::sim
