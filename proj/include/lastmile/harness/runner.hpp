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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lastmile/harness/metrics.hpp"
#include "lastmile/harness/run_log.hpp"
#include "lastmile/harness/scenario.hpp"
#include "lastmile/waypoint/waypoint.hpp"

namespace lastmile::harness {

struct RunOptions {
  std::optional<std::uint64_t> seed;      // overrides the scenario seed
  std::ostream* detection_log = nullptr;  // "t,d,N,a,b,c" per detection
  std::ostream* grid_dump = nullptr;      // occupied cells per LiDAR frame
};

struct RunResult {
  std::vector<LogRecord> log;
  RunMetrics metrics;
  waypoint::WaypointList route;
};

/// Loads or compiles the scenario route. The list origin is the scenario
/// origin when given.
waypoint::WaypointList ResolveRoute(const Scenario& scenario);

/// Smallest distance between the vehicle footprint and any obstacle or
/// pedestrian; 0 on contact, NaN for an empty world.
double FootprintGap(const sim::VehicleState& state, const sim::VehicleParams& vehicle,
                    const sim::WorldModel& world);

/// Fixed-step closed loop. Per tick: pedestrian triggers, waypoint command,
/// LiDAR scan (at lidar_rate) into the obstacle and sign detectors, speed
/// modifiers, arbiter, twist controller, plant, log.
RunResult Run(const Scenario& scenario, const RunOptions& options = {});

}  // namespace lastmile::harness
