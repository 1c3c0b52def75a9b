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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lastmile/control/twist_controller.hpp"
#include "lastmile/obstacle/corridor.hpp"
#include "lastmile/obstacle/obstacle_detector.hpp"
#include "lastmile/obstacle/occupancy_grid.hpp"
#include "lastmile/sign/sign_detector.hpp"
#include "lastmile/sim/lidar.hpp"
#include "lastmile/sim/vehicle.hpp"
#include "lastmile/sim/world.hpp"
#include "lastmile/waypoint/follower.hpp"
#include "lastmile/waypoint/path_compiler.hpp"

namespace lastmile::harness {

/// One piece of a scripted manual drive. Either a path piece (length or
/// arc angle, with a signed radius: positive turns left, 0 is straight) or
/// a timed piece (duration with a constant yaw rate).
struct DriveSegment {
  double length = 0.0;     // m; derived from angle for arcs
  double radius = 0.0;     // m, signed; 0 = straight
  double duration = 0.0;   // s; timed pieces only
  double yaw_rate = 0.0;   // rad/s; timed pieces only
  std::optional<double> speed;  // overrides the script speed
  bool timed = false;
};

struct DriveScript {
  double speed = 2.0;        // m/s while recording
  double heading = 0.0;      // rad, initial
  double sample_rate = 50.0; // Hz
  std::vector<DriveSegment> segments;
};

/// A pedestrian that stands still until the front bumper comes within
/// `trigger_distance` (when set), then walks at `walk_velocity`.
struct PedestrianSpec {
  sim::Pedestrian pedestrian;
  Vector2d walk_velocity = Vector2d::Zero();
  std::optional<double> trigger_distance;
};

struct RouteSpec {
  std::filesystem::path waypoint_file;  // used when set
  std::filesystem::path trace_file;     // else compiled from a trace file
  std::optional<DriveScript> drive_script;  // else from an inline script
  double speed = 3.0;                   // compile target speed
};

struct Scenario {
  std::string name = "scenario";
  std::filesystem::path base_dir;  // relative paths resolve against this
  std::optional<waypoint::GeoPoint> origin;
  double tick_rate = 50.0;
  double duration = 60.0;
  std::uint64_t seed = 1;
  bool end_on_arrival = true;
  std::optional<sim::VehicleState> initial_state;

  sim::VehicleParams vehicle;
  control::ControllerParams controller;
  waypoint::FollowerParams follower;
  waypoint::CompileParams compile;
  sim::LidarConfig lidar;
  double lidar_rate = 10.0;  // Hz
  int perception_latency_ticks = 0;
  obstacle::GridParams grid;
  obstacle::CorridorParams corridor;
  obstacle::SlowdownParams slowdown;
  sign::FilterParams sign_filter;
  sign::SignStopParams sign_stop;

  sim::WorldModel world;  // pedestrians live in `pedestrians`
  std::vector<PedestrianSpec> pedestrians;

  std::optional<RouteSpec> route;
  std::optional<DriveScript> drive_script;  // for `record`
};

/// Parses a YAML scenario. Relative paths resolve against `base_dir`.
/// Throws ParseError with the offending line.
Scenario ParseScenario(const std::string& text, const std::string& source,
                       const std::filesystem::path& base_dir = {});
Scenario LoadScenario(const std::filesystem::path& path);

/// Throws ParseError (line 0) when the scenario is out of range.
void Validate(const Scenario& scenario);

/// Keeps vehicle-derived parameters (wheelbase, bumper, roof, max decel)
/// consistent across the controller and perception settings.
void SyncDerivedParams(Scenario& scenario);

}  // namespace lastmile::harness
