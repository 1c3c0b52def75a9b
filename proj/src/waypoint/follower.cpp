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

#include "lastmile/waypoint/follower.hpp"

#include <algorithm>
#include <cmath>

#include "lastmile/core/errors.hpp"
#include "lastmile/core/geometry.hpp"

namespace lastmile::waypoint {

Points2d LocalPath(const WaypointList& list) {
  Points2d path(2, static_cast<Eigen::Index>(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i) {
    path.col(static_cast<Eigen::Index>(i)) =
        ToLocal(list.origin, list.waypoints[i].lat, list.waypoints[i].lon);
  }
  return path;
}

void Validate(const Waypoint& wp) {
  if (!std::isfinite(wp.lat) || !std::isfinite(wp.lon) ||
      !std::isfinite(wp.speed) || std::abs(wp.lat) > 90.0 ||
      std::abs(wp.lon) > 180.0 || wp.speed < 0.0) {
    throw InvalidStateError("waypoint out of range");
  }
}

void Validate(const RecordedTrace& trace) {
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    if (!(trace.samples[i].t > trace.samples[i - 1].t)) {
      throw InvalidStateError("trace timestamps must strictly increase");
    }
  }
}

FollowResult FollowStep(const WaypointList& list, const sim::VehicleState& state,
                        const FollowerParams& params) {
  if (list.empty()) throw NoPathError("waypoint list is empty");

  FollowResult out;
  out.list = list;
  std::size_t& index = out.list.target_index;
  index = std::min(index, list.size() - 1);

  const Vector2d position(state.x, state.y);
  const auto target_at = [&](std::size_t i) {
    return ToLocal(list.origin, list.waypoints[i].lat, list.waypoints[i].lon);
  };

  Vector2d target = target_at(index);
  while ((target - position).norm() < params.switch_radius &&
         index + 1 < list.size()) {
    ++index;
    target = target_at(index);
  }

  out.command.accel_limit = params.accel_limit;
  out.command.decel_limit = params.decel_limit;
  bool passed = false;
  if (index + 1 == list.size() && index > 0) {
    passed = (target - target_at(index - 1)).dot(position - target) >= 0.0;
  }
  if ((target - position).norm() < params.switch_radius || passed) {
    out.finished = true;
    return out;  // zero twist
  }

  const Vector2d to_target = target - position;
  const double bearing = std::atan2(to_target.y(), to_target.x());
  const double error =
      NormalizeAngle(bearing - state.heading + params.heading_bias);
  out.command.angular_v = params.heading_gain * error;
  out.command.linear_v = list.waypoints[index].speed;

  // Taper toward the final waypoint so the stop lands near it.
  const double horizon = out.command.linear_v * out.command.linear_v /
                             (2.0 * params.decel_limit) +
                         params.switch_radius;
  double remaining = to_target.norm();
  std::size_t i = index;
  Vector2d p = target;
  while (i + 1 < list.size() && remaining <= horizon) {
    const Vector2d q = target_at(++i);
    remaining += (q - p).norm();
    p = q;
  }
  if (i + 1 == list.size() && remaining <= horizon) {
    const double slack = std::max(remaining - params.switch_radius, 0.0) + params.arrival_slack;
    out.command.linear_v =
        std::min(out.command.linear_v, std::sqrt(2.0 * params.decel_limit * slack));
  }
  return out;
}

double CrossTrackError(const WaypointList& list,
                       const sim::VehicleState& state) {
  if (list.size() < 2) {
    throw NoPathError("cross-track error needs at least two waypoints");
  }
  return CrossTrackError<double>(LocalPath(list), Vector2d(state.x, state.y));
}

}  // namespace lastmile::waypoint
