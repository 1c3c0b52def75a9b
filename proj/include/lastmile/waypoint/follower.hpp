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
#include "lastmile/sim/vehicle.hpp"
#include "lastmile/waypoint/waypoint.hpp"

namespace lastmile::waypoint {

struct FollowerParams {
  double heading_gain = 1.5;   // rad/s per rad of bearing error
  double switch_radius = 2.0;  // m
  double heading_bias = 0.0;   // rad, added to the bearing error
  double accel_limit = 1.0;
  double decel_limit = 1.0;
  double arrival_slack = 0.1;  // m added to the braking distance at route end
};

struct FollowResult {
  control::TwistCommand command;
  WaypointList list;
  bool finished = false;
};

/// Heading-error proportional follower. Skips every waypoint closer than
/// the switch radius, then steers toward the current target at the
/// target's recorded speed, tapered so the vehicle can stop at the decel
/// limit by the end of the route. Commands zero speed once the last
/// waypoint is reached or passed. Throws NoPathError on an empty list.
FollowResult FollowStep(const WaypointList& list, const sim::VehicleState& state,
                        const FollowerParams& params = {});

/// Unsigned distance from `p` to the nearest segment of the polyline.
template <typename Scalar>
Scalar CrossTrackError(const Points2<Scalar>& path, const Vector2<Scalar>& p);

/// Cross-track error of the vehicle's reference point against the list.
/// Needs at least two waypoints.
double CrossTrackError(const WaypointList& list, const sim::VehicleState& state);

}  // namespace lastmile::waypoint

#include <algorithm>
#include <limits>

#include "lastmile/core/geometry.hpp"

namespace lastmile::waypoint {

template <typename Scalar>
Scalar CrossTrackError(const Points2<Scalar>& path, const Vector2<Scalar>& p) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index i = 1; i < path.cols(); ++i) {
    const Vector2<Scalar> a = path.col(i - 1);
    const Vector2<Scalar> b = path.col(i);
    best = std::min(best, PointSegmentDistance(p, a, b));
  }
  return best;
}

}  // namespace lastmile::waypoint
