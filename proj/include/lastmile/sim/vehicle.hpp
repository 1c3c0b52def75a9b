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

#pragma once

namespace lastmile::sim {

/// Pose and motion of the simulated shuttle in the local ENU frame. The
/// reference point is the rear-axle centre.
struct VehicleState {
  double x = 0.0;        // m, east
  double y = 0.0;        // m, north
  double heading = 0.0;  // rad, CCW from east, (-pi, pi]
  double speed = 0.0;    // m/s, >= 0
  double yaw_rate = 0.0; // rad/s
  double accel = 0.0;    // m/s^2, longitudinal
  double steer_angle = 0.0;  // rad, front wheel
  // Brake actuator state: deceleration the brakes are currently delivering.
  double brake_decel = 0.0;  // m/s^2, >= 0
};

struct VehicleParams {
  double wheelbase = 2.57;
  double steering_ratio = 16.0;
  double max_steer = 0.55;
  // Full-brake deceleration. Paired with brake_time_constant so a full stop
  // from 3 m/s takes about 1.6 m and 0.8 s.
  double max_decel = 6.4;
  double brake_time_constant = 0.43;
  // Brake positions up to here follow exp((b - 0.90) / 0.28); above it the
  // map rises linearly to max_decel at b = 1.
  double brake_knee = 0.95;
  double throttle_gain = 2.0;  // m/s^2 at full throttle
  double lidar_mount_height = 2.0;
  double lidar_offset_x = 1.5;
  double front_bumper_x = 3.1;
  double rear_bumper_x = -0.5;
  double half_width = 0.75;
  double roof_height = 2.1;
};

/// Throws InvalidStateError unless every parameter is finite and positive
/// (rear_bumper_x may be negative) and the geometry is consistent.
void Validate(const VehicleParams& params);

}  // namespace lastmile::sim
