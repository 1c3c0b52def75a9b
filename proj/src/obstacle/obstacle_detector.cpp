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

#include "lastmile/obstacle/obstacle_detector.hpp"

#include <algorithm>

#include "lastmile/sim/plant.hpp"

namespace lastmile::obstacle {

ObstacleReport FindClosestObstacle(const OccupancyGrid& grid,
                                   const Corridor& corridor) {
  ObstacleReport report;
  for (Eigen::Index r = 0; r < grid.cells_per_side(); ++r) {
    for (Eigen::Index c = 0; c < grid.cells_per_side(); ++c) {
      if (!grid.occupied(r, c)) continue;
      const Vector2d center = grid.CellCenter({r, c});
      const auto coord = corridor.Project(center);
      if (!coord) continue;
      if (!report.present || coord->distance < report.closest_distance) {
        report.present = true;
        report.closest_distance = coord->distance;
        report.cell_position = center;
      }
    }
  }
  return report;
}

double SlowdownSpeed(double distance, const SlowdownParams& params) {
  return std::max(0.0, distance / params.distance_per_mps - 1.0);
}

control::TwistCommand ModifySpeed(const control::TwistCommand& cmd,
                                  const ObstacleReport& report,
                                  const SlowdownParams& params) {
  if (!report.present) return cmd;
  control::TwistCommand out = cmd;
  if (report.closest_distance <= params.stop_distance) {
    out.linear_v = 0.0;
    out.decel_limit = std::max(cmd.decel_limit, params.max_decel);
    return out;
  }
  out.linear_v = std::min(cmd.linear_v, SlowdownSpeed(report.closest_distance, params));
  return out;
}

control::TwistCommand ModifySpeed(const control::TwistCommand& cmd,
                                  const OccupancyGrid& grid,
                                  const Corridor& corridor,
                                  const SlowdownParams& params) {
  return ModifySpeed(cmd, FindClosestObstacle(grid, corridor), params);
}

double RequiredSideClearance(double speed, const sim::VehicleParams& vehicle,
                             double walking_speed) {
  if (!(speed > 0.0)) return 0.0;
  return walking_speed * sim::SimulateFullBrakeStop(speed, vehicle).time;
}

}  // namespace lastmile::obstacle
