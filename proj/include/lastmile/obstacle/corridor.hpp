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

#include <optional>

#include "lastmile/core/types.hpp"

namespace lastmile::obstacle {

struct CorridorParams {
  double length = 15.0;       // m checked ahead of the front bumper
  double half_width = 1.15;   // vehicle half-width 0.75 + 0.4 clearance
  double straight_threshold = 0.01;  // rad
  double wheelbase = 2.57;
  double start_offset = 3.1;  // front bumper, m ahead of the rear axle
};

/// Position of a point relative to the corridor centreline.
struct CorridorCoord {
  double distance = 0.0;  // arc length past the front bumper
  double lateral = 0.0;   // unsigned offset from the centreline
};

/// Swept region predicted from the current steering angle. The centreline
/// is the rear-axle path: a circle of radius L / tan(delta) through the
/// origin, or the x axis when the steering is nearly straight.
struct Corridor {
  bool straight = true;
  double radius = 0.0;  // signed, positive turning left; unused when straight
  double length = 15.0;
  double half_width = 1.15;
  double start_offset = 3.1;

  /// Centreline arc length from the rear axle and lateral offset, without
  /// any range check. nullopt only for the circle centre.
  std::optional<CorridorCoord> ProjectRaw(const Vector2d& p) const;

  /// Coordinates of `p` if it lies inside the corridor.
  std::optional<CorridorCoord> Project(const Vector2d& p) const;

  bool Contains(const Vector2d& p) const { return Project(p).has_value(); }

  /// Centreline point at arc length `s` from the rear axle.
  Vector2d CenterlinePoint(double s) const;
};

Corridor CorridorFromSteering(double steer_angle, const CorridorParams& params = {});

}  // namespace lastmile::obstacle
