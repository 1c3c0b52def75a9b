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

#include "lastmile/control/twist.hpp"
#include "lastmile/obstacle/corridor.hpp"
#include "lastmile/obstacle/occupancy_grid.hpp"
#include "lastmile/sim/vehicle.hpp"

namespace lastmile::obstacle {

struct ObstacleReport {
  bool present = false;
  double closest_distance = 0.0;  // m along the corridor past the bumper
  Vector2d cell_position = Vector2d::Zero();
};

/// Closest occupied cell whose centre lies in the corridor.
ObstacleReport FindClosestObstacle(const OccupancyGrid& grid, const Corridor& corridor);

struct SlowdownParams {
  double stop_distance = 5.0;  // full stop at or inside this distance
  double distance_per_mps = 5.0;  // v = d / 5 - 1
  double max_decel = 6.4;      // decel limit attached to stop commands
};

/// Speed allowed at obstacle distance d: max(0, d / 5 - 1).
double SlowdownSpeed(double distance, const SlowdownParams& params = {});

/// Applies the distance slowdown to `cmd`. Absent obstacles leave the
/// command untouched; inside the stop distance the output is a zero-speed
/// command at the maximum deceleration. Never raises linear_v.
control::TwistCommand ModifySpeed(const control::TwistCommand& cmd,
                                  const ObstacleReport& report,
                                  const SlowdownParams& params = {});

control::TwistCommand ModifySpeed(const control::TwistCommand& cmd,
                                  const OccupancyGrid& grid, const Corridor& corridor,
                                  const SlowdownParams& params = {});

/// Lateral clearance a perpendicular walker at `walking_speed` needs so the
/// shuttle, braking fully from `speed`, stops before the walker reaches its
/// path: walking_speed times the simulated stopping time.
double RequiredSideClearance(double speed, const sim::VehicleParams& vehicle = {},
                             double walking_speed = 1.4);

}  // namespace lastmile::obstacle
