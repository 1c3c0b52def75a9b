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

#include <vector>

#include "lastmile/waypoint/waypoint.hpp"

namespace lastmile::waypoint {

struct CompileParams {
  double spacing = 1.0;          // m between output waypoints
  double max_lateral_accel = 0.5;  // m/s^2
  double min_yaw_rate = 1e-3;    // below this the radius is unbounded
};

/// Compiled waypoints plus the turn radius each speed was limited by
/// (+inf on straights).
struct CompiledPath {
  WaypointList list;
  std::vector<double> radius;
};

/// Resamples a driven trace at fixed arc-length spacing and caps each
/// waypoint's speed at min(target, sqrt(max_lateral_accel * r)) with the
/// turn radius r = v / |omega| taken from the recorded motion. The local
/// frame origin is the first trace sample. Throws DegenerateInputError on
/// traces with fewer than two samples or zero length.
CompiledPath CompilePathDetailed(const RecordedTrace& trace, double target_speed,
                                 const CompileParams& params = {});

WaypointList CompilePath(const RecordedTrace& trace, double target_speed,
                         const CompileParams& params = {});

/// One list per requested speed.
std::vector<WaypointList> CompilePaths(const RecordedTrace& trace,
                                       const std::vector<double>& target_speeds,
                                       const CompileParams& params = {});

}  // namespace lastmile::waypoint
