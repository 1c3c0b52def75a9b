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

#include <cstddef>
#include <vector>

#include "lastmile/core/types.hpp"
#include "lastmile/waypoint/geodesy.hpp"

namespace lastmile::waypoint {

struct Waypoint {
  double lat = 0.0;
  double lon = 0.0;
  double speed = 0.0;  // m/s
};

struct WaypointList {
  std::vector<Waypoint> waypoints;
  std::size_t target_index = 0;
  GeoPoint origin;

  bool empty() const { return waypoints.empty(); }
  std::size_t size() const { return waypoints.size(); }
};

/// Waypoint positions in the list's local frame, one per column.
Points2d LocalPath(const WaypointList& list);

struct TraceSample {
  double lat = 0.0;
  double lon = 0.0;
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
  double t = 0.0;      // s
};

/// Position, speed and yaw rate logged while driving a route by hand.
struct RecordedTrace {
  std::vector<TraceSample> samples;
};

/// Throws InvalidStateError on out-of-range coordinates or negative speed.
void Validate(const Waypoint& wp);
/// Throws InvalidStateError unless timestamps strictly increase.
void Validate(const RecordedTrace& trace);

}  // namespace lastmile::waypoint
